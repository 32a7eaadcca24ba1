//! Data equivalence of premodular categories by pruned backtracking over label bijections.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::embedding::{EmbeddingError, SymmetryEmbedding};
use crate::exactnum::{Cyclo, Turn};
use crate::premodular::Premodular;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("color lists must cover every label")]
    ColorLength,
}

/// Per-label invariants preserved by any data equivalence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub dim: Cyclo,
    pub twist: Turn,
    pub srow: Vec<Cyclo>,
    pub self_fusion: Vec<u32>,
}

pub fn fingerprint(p: &Premodular, x: usize) -> Fingerprint {
    let mut srow = p.smatrix().row(x).to_vec();
    srow.sort();
    let mut self_fusion: Vec<u32> = p.ring().product(x, x).iter().map(|&(_, m)| m).collect();
    self_fusion.sort_unstable();
    Fingerprint { dim: p.dim(x).clone(), twist: p.twist(x), srow, self_fusion }
}

/// Sorted multiset of label fingerprints.
pub fn canonical_fingerprint(p: &Premodular) -> Vec<Fingerprint> {
    let mut v: Vec<Fingerprint> = (0..p.rank()).into_par_iter().map(|x| fingerprint(p, x)).collect();
    v.sort();
    v
}

/// Extra requirements on a bijection `σ`.
#[derive(Debug, Clone, Default)]
pub struct Constraints {
    /// Pairs `(x, y)` with `σ(x) = y` required.
    pub fixed: Vec<(usize, usize)>,
    /// Label classes that `σ` must preserve.
    pub colors: Option<(Vec<usize>, Vec<usize>)>,
}

impl Constraints {
    pub fn respecting(emb1: &SymmetryEmbedding, emb2: &SymmetryEmbedding) -> Result<Constraints, EquivError> {
        emb1.same_group(emb2)?;
        let fixed = emb1.map().iter().copied().zip(emb2.map().iter().copied()).collect();
        Ok(Constraints { fixed, colors: None })
    }
}

/// First bijection in lexicographic search order, or `None`. Embeddings, when given,
/// are pinned: `σ(map1(e)) = map2(e)`.
pub fn find_equivalence(
    p1: &Premodular,
    p2: &Premodular,
    embs: Option<(&SymmetryEmbedding, &SymmetryEmbedding)>,
) -> Result<Option<Vec<usize>>, EquivError> {
    let constraints = match embs {
        Some((e1, e2)) => {
            e1.check(p1)?;
            e2.check(p2)?;
            Constraints::respecting(e1, e2)?
        }
        None => Constraints::default(),
    };
    find_equivalence_with(p1, p2, &constraints)
}

pub fn find_equivalence_with(p1: &Premodular, p2: &Premodular, constraints: &Constraints) -> Result<Option<Vec<usize>>, EquivError> {
    let n = p1.rank();
    if let Some((c1, c2)) = &constraints.colors {
        if c1.len() != n || c2.len() != p2.rank() {
            return Err(EquivError::ColorLength);
        }
    }
    if p2.rank() != n {
        return Ok(None);
    }
    let (f1, f2): (Vec<Fingerprint>, Vec<Fingerprint>) =
        rayon::join(|| (0..n).into_par_iter().map(|x| fingerprint(p1, x)).collect(), || (0..n).into_par_iter().map(|x| fingerprint(p2, x)).collect());
    let (mut s1, mut s2) = (f1.clone(), f2.clone());
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }
    let color_ok = |i: usize, j: usize| constraints.colors.as_ref().is_none_or(|(c1, c2)| c1[i] == c2[j]);
    let candidates: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| f1[i] == f2[j] && color_ok(i, j)).collect()).collect();

    let mut search = Search::new(p1, p2);
    for &(x, y) in std::iter::once(&(0, 0)).chain(&constraints.fixed) {
        if x >= n || y >= n {
            return Ok(None);
        }
        match search.sigma[x] {
            Some(prev) if prev == y => continue,
            Some(_) => return Ok(None),
            None => {}
        }
        if !candidates[x].contains(&y) || search.inverse[y].is_some() || !search.consistent(x, y) {
            return Ok(None);
        }
        search.assign(x, y);
    }
    let order: Vec<usize> = (0..n).filter(|&i| search.sigma[i].is_none()).collect();
    let found = search.run(&order, &candidates);
    if let Some(sigma) = &found {
        debug_assert!(verify_equivalence(p1, p2, sigma).is_ok());
    }
    Ok(found)
}

#[derive(Clone)]
struct Search<'a> {
    p1: &'a Premodular,
    p2: &'a Premodular,
    sigma: Vec<Option<usize>>,
    inverse: Vec<Option<usize>>,
    assigned: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(p1: &'a Premodular, p2: &'a Premodular) -> Self {
        let n = p1.rank();
        Search { p1, p2, sigma: vec![None; n], inverse: vec![None; n], assigned: Vec::new() }
    }

    fn assign(&mut self, i: usize, j: usize) {
        self.sigma[i] = Some(j);
        self.inverse[j] = Some(i);
        self.assigned.push(i);
    }

    fn unassign(&mut self, i: usize) {
        let j = self.sigma[i].take().expect("assigned");
        self.inverse[j] = None;
        self.assigned.pop();
    }

    /// Checks `i ↦ j` against every assigned label (and itself).
    fn consistent(&self, i: usize, j: usize) -> bool {
        let (r1, r2) = (self.p1.ring(), self.p2.ring());
        let (d1, d2) = (r1.dual(i), r2.dual(j));
        let sigma_of = |k: usize| if k == i { Some(j) } else { self.sigma[k] };
        let inverse_of = |l: usize| if l == j { Some(i) } else { self.inverse[l] };
        if sigma_of(d1).is_some_and(|x| x != d2) || inverse_of(d2).is_some_and(|x| x != d1) {
            return false;
        }
        let (s1, s2) = (self.p1.smatrix(), self.p2.smatrix());
        for &k in self.assigned.iter().chain(std::iter::once(&i)) {
            let sk = sigma_of(k).expect("assigned");
            if s1.get(i, k) != s2.get(j, sk) {
                return false;
            }
            for &(l, m) in r1.product(i, k) {
                if sigma_of(l).is_some_and(|sl| r2.mult(j, sk, sl) != m) {
                    return false;
                }
            }
            for &(l, m) in r2.product(j, sk) {
                if inverse_of(l).is_some_and(|il| r1.mult(i, k, il) != m) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, order: &[usize], candidates: &[Vec<usize>]) -> Option<Vec<usize>> {
        let Some((&i, rest)) = order.split_first() else {
            return Some(self.sigma.iter().map(|s| s.expect("complete")).collect());
        };
        let open: Vec<usize> = candidates[i].iter().copied().filter(|&j| self.inverse[j].is_none()).collect();
        if open.len() > 1 && self.assigned.len() <= 1 {
            // first branching level: explore in parallel, keep the lexicographically first hit
            return open.par_iter().find_map_first(|&j| {
                if !self.consistent(i, j) {
                    return None;
                }
                let mut branch = self.clone();
                branch.assign(i, j);
                branch.run(rest, candidates)
            });
        }
        for j in open {
            if self.consistent(i, j) {
                self.assign(i, j);
                if let Some(found) = self.run(rest, candidates) {
                    return Some(found);
                }
                self.unassign(i);
            }
        }
        None
    }
}

/// The first quantity a proposed bijection fails to preserve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivFailure {
    NotBijection,
    Unit,
    Dim(usize),
    Twist(usize),
    Dual(usize),
    Fusion(usize, usize, usize),
    Smatrix(usize, usize),
    Embedding(usize),
}

impl fmt::Display for EquivFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivFailure::NotBijection => write!(f, "map is not a bijection"),
            EquivFailure::Unit => write!(f, "unit is not preserved"),
            EquivFailure::Dim(i) => write!(f, "dimension of label {i} differs"),
            EquivFailure::Twist(i) => write!(f, "twist of label {i} differs"),
            EquivFailure::Dual(i) => write!(f, "dual of label {i} is not preserved"),
            EquivFailure::Fusion(i, j, k) => write!(f, "fusion coefficient ({i},{j};{k}) differs"),
            EquivFailure::Smatrix(i, j) => write!(f, "S-matrix entry ({i},{j}) differs"),
            EquivFailure::Embedding(e) => write!(f, "embedding image of element {e} is not preserved"),
        }
    }
}

/// Exhaustive check that `σ` preserves all modular data.
pub fn verify_equivalence(p1: &Premodular, p2: &Premodular, sigma: &[usize]) -> Result<(), EquivFailure> {
    let n = p1.rank();
    if p2.rank() != n || sigma.len() != n {
        return Err(EquivFailure::NotBijection);
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || std::mem::replace(&mut seen[s], true) {
            return Err(EquivFailure::NotBijection);
        }
    }
    if sigma[0] != 0 {
        return Err(EquivFailure::Unit);
    }
    let (r1, r2) = (p1.ring(), p2.ring());
    for i in 0..n {
        if p1.dim(i) != p2.dim(sigma[i]) {
            return Err(EquivFailure::Dim(i));
        }
        if p1.twist(i) != p2.twist(sigma[i]) {
            return Err(EquivFailure::Twist(i));
        }
        if sigma[r1.dual(i)] != r2.dual(sigma[i]) {
            return Err(EquivFailure::Dual(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if r1.mult(i, j, k) != r2.mult(sigma[i], sigma[j], sigma[k]) {
                    return Err(EquivFailure::Fusion(i, j, k));
                }
            }
            if p1.smatrix().get(i, j) != p2.smatrix().get(sigma[i], sigma[j]) {
                return Err(EquivFailure::Smatrix(i, j));
            }
        }
    }
    Ok(())
}

/// [`verify_equivalence`] plus `σ ∘ map1 = map2`.
pub fn verify_respecting(
    p1: &Premodular,
    p2: &Premodular,
    sigma: &[usize],
    emb1: &SymmetryEmbedding,
    emb2: &SymmetryEmbedding,
) -> Result<(), EquivFailure> {
    verify_equivalence(p1, p2, sigma)?;
    for e in 0..emb1.map().len() {
        if emb2.map().get(e) != Some(&sigma[emb1.image_of(e)]) {
            return Err(EquivFailure::Embedding(e));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::drinfeld_double_abelian;
    use crate::group::AbelianGroup;
    use crate::premodular::tests::{ising, semion, toric};

    fn swapped_toric() -> Premodular {
        toric().reordered(&[0, 2, 1, 3]).renamed("toric_swapped")
    }

    #[test]
    fn relabeling_is_found() {
        let (tc, sw) = (toric(), swapped_toric());
        let sigma = find_equivalence(&tc, &sw, None).unwrap().unwrap();
        assert_eq!(sigma, vec![0, 1, 2, 3]);
        assert!(verify_equivalence(&tc, &sw, &sigma).is_ok());
        assert_eq!(find_equivalence(&tc, &tc, None).unwrap(), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn double_semion_is_not_toric() {
        let ds = semion().deligne_product(&semion().reverse_braiding());
        assert_eq!(find_equivalence(&toric(), &ds, None).unwrap(), None);
        assert_ne!(canonical_fingerprint(&toric()), canonical_fingerprint(&ds));
    }

    #[test]
    fn respecting_e_maps_e_to_m() {
        let tc = toric();
        let z2 = AbelianGroup::new(&[2]).unwrap();
        let e = SymmetryEmbedding::new(z2.clone(), "toric", vec![0, 1]).unwrap();
        let m = SymmetryEmbedding::new(z2, "toric", vec![0, 2]).unwrap();
        let sigma = find_equivalence(&tc, &tc, Some((&e, &m))).unwrap().unwrap();
        assert_eq!(sigma, vec![0, 2, 1, 3]);
        assert!(verify_respecting(&tc, &tc, &sigma, &e, &m).is_ok());
    }

    #[test]
    fn fingerprints() {
        let (d, _) = drinfeld_double_abelian(&AbelianGroup::new(&[2]).unwrap());
        assert_eq!(canonical_fingerprint(&toric()), canonical_fingerprint(&d));
        assert_ne!(canonical_fingerprint(&semion()), canonical_fingerprint(&semion().reverse_braiding()));
        assert_eq!(canonical_fingerprint(&ising()), canonical_fingerprint(&ising()));
    }

    #[test]
    fn colors_restrict_the_search() {
        let tc = toric();
        let free = Constraints::default();
        assert!(find_equivalence_with(&tc, &tc, &free).unwrap().is_some());
        let pinned = Constraints { fixed: vec![], colors: Some((vec![0, 1, 2, 3], vec![0, 2, 1, 3])) };
        assert_eq!(find_equivalence_with(&tc, &tc, &pinned).unwrap(), Some(vec![0, 2, 1, 3]));
        let bad = Constraints { fixed: vec![(1, 3)], colors: None };
        assert_eq!(find_equivalence_with(&tc, &tc, &bad).unwrap(), None);
    }

    #[test]
    fn verifier_rejects_bad_maps() {
        let tc = toric();
        assert_eq!(verify_equivalence(&tc, &tc, &[0, 1, 3, 2]), Err(EquivFailure::Twist(2)));
        assert_eq!(verify_equivalence(&tc, &tc, &[0, 1, 1, 3]), Err(EquivFailure::NotBijection));
        assert_eq!(verify_equivalence(&tc, &tc, &[1, 0, 2, 3]), Err(EquivFailure::Unit));
    }
}
