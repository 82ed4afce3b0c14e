#![allow(dead_code)]

use rand::Rng;
use roughpair::{enumerate_partitions, Partition, Universe};

pub fn universe(n: usize) -> Universe {
    Universe::alphabetic(n).unwrap()
}

pub fn partitions(u: &Universe) -> Vec<Partition> {
    enumerate_partitions(u).unwrap().collect()
}

/// Every ordered pair of partitions on `{a, ..}` of size `n`.
pub fn pairs(n: usize) -> Vec<(Partition, Partition)> {
    let ps = partitions(&universe(n));
    ps.iter()
        .flat_map(|a| ps.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

pub fn random_partition<R: Rng>(rng: &mut R, u: &Universe) -> Partition {
    let labels: Vec<usize> = (0..u.len()).map(|_| rng.gen_range(0..u.len())).collect();
    Partition::from_labels(u, &labels).unwrap()
}
