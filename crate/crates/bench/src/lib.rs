//! Fixed workloads shared by the benches.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use setcat::catalog::category;
use setcat::pointed::{random_isotropic, random_nondegenerate, MetricGroup};
use setcat::premodular::Premodular;

/// `Ising ⊠ reverse(Ising)` with the boson set `{(1,1), (ψ,ψ)}`.
pub fn ising_squared() -> (Premodular, Vec<usize>) {
    let is = category("ising");
    let p = is.deligne_product(&is.reverse_braiding());
    let psi = p.index_of("(psi,psi)").expect("product label");
    (p, vec![0, psi])
}

/// A seeded nondegenerate metric group with an isotropic subgroup, as its pointed category.
pub fn pointed_case(seed: u64, max_order: u64) -> (MetricGroup, Premodular, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_nondegenerate(&mut rng, max_order);
    let gens = random_isotropic(&mut rng, &m);
    let h = m.subgroup(&gens).expect("generators are elements");
    let p = m.to_premodular(format!("bench{seed}"));
    (m, p, h)
}

/// The same category with its non-unit labels permuted.
pub fn shuffled(p: &Premodular, seed: u64) -> Premodular {
    let mut rest: Vec<usize> = (1..p.rank()).collect();
    rest.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let order: Vec<usize> = std::iter::once(0).chain(rest).collect();
    p.reordered(&order)
}

/// Seed of the first case whose group has exactly `order` elements.
pub fn seed_with_order(order: usize, max_order: u64) -> u64 {
    (0..).find(|&s| pointed_case(s, max_order).0.order() == order).expect("some seed hits the order")
}
