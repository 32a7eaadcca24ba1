//! Condensation of transparent invertible bosons, the relative tensor product
//! `C ⊡_E D`, relative centralizers and the verifiers built on them.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::double::drinfeld_double_abelian;
use crate::embedding::{EmbeddingError, SymmetryEmbedding};
use crate::equiv::{find_equivalence, find_equivalence_with, Constraints, EquivError};
use crate::exactnum::{Cyclo, Turn};
use crate::fusion::FusionRing;
use crate::premodular::{Premodular, PremodularError};

/// Search nodes allowed per condensation before giving up.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;
const MAX_SURVIVORS: usize = 32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CondenseError {
    #[error("label index {0} is out of range")]
    UnknownLabel(usize),
    #[error("boson set must contain the unit")]
    MissingUnit,
    #[error("`{0}` is not invertible")]
    NotInvertible(String),
    #[error("`{0}` is not a boson")]
    NotBoson(String),
    #[error("`{0}` and `{1}` do not centralize each other")]
    NotTransparent(String, String),
    #[error("boson set is not closed: `{0}` ⊗ `{1}` leaves it")]
    NotClosed(String, String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Equivalence(#[from] EquivError),
    #[error(transparent)]
    Premodular(#[from] PremodularError),
    #[error("twist is not constant on the orbit of `{rep}`: `{member}` differs")]
    TwistNotConstant { rep: String, member: String },
    #[error("no fusion rule for the condensed labels is consistent with the modular data")]
    NoConsistentFusion,
    #[error("splitting enumeration exceeded {0} search nodes")]
    EngineLimit(u64),
}

impl CondenseError {
    /// Internal failures, as opposed to rejected inputs.
    pub fn is_fault(&self) -> bool {
        matches!(
            self,
            CondenseError::TwistNotConstant { .. } | CondenseError::NoConsistentFusion | CondenseError::EngineLimit(_)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub representative: usize,
    pub members: Vec<usize>,
    pub stabilizer: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CondensationResult {
    pub input_name: String,
    pub input_labels: Vec<String>,
    pub bosons: Vec<usize>,
    pub result: Premodular,
    pub deconfined: Vec<usize>,
    pub confined: Vec<usize>,
    pub orbits: Vec<Orbit>,
    /// Number of result simples per orbit.
    pub splittings: Vec<usize>,
    /// `(orbit, child)` for each result label.
    pub provenance: Vec<(usize, usize)>,
    /// Further fusion rules that pass every consistency filter.
    pub alternatives: Vec<Premodular>,
    pub ambiguity_flags: Vec<String>,
    /// The embedding of `E` carried by a relative tensor product.
    pub embedding: Option<SymmetryEmbedding>,
}

impl CondensationResult {
    pub fn is_ambiguous(&self) -> bool {
        !self.ambiguity_flags.is_empty()
    }
}

pub fn condense_by_invertible_bosons(p: &Premodular, bosons: &[usize]) -> Result<CondensationResult, CondenseError> {
    condense_with_budget(p, bosons, DEFAULT_NODE_BUDGET)
}

pub fn condense_with_budget(p: &Premodular, bosons: &[usize], budget: u64) -> Result<CondensationResult, CondenseError> {
    let h = check_bosons(p, bosons)?;
    let deconfined = p.centralizer(&h)?;
    let confined: Vec<usize> = (0..p.rank()).filter(|x| deconfined.binary_search(x).is_err()).collect();
    let orbits = orbits(p, &h, &deconfined)?;
    let layout = Layout::new(p, &orbits);
    let name = format!("{}/{{{}}}", p.name(), h.iter().map(|&x| p.label(x)).collect::<Vec<_>>().join(","));
    let mut survivors = layout.solve(p, &name, budget)?;
    if survivors.is_empty() {
        return Err(CondenseError::NoConsistentFusion);
    }
    let ambiguity_flags = ambiguity_flags(&survivors);
    let result = survivors.remove(0);
    Ok(CondensationResult {
        input_name: p.name().to_string(),
        input_labels: p.labels().to_vec(),
        bosons: h,
        result,
        deconfined,
        confined,
        splittings: orbits.iter().map(|o| o.stabilizer.len()).collect(),
        orbits,
        provenance: layout.provenance(),
        alternatives: survivors,
        ambiguity_flags,
        embedding: None,
    })
}

fn check_bosons(p: &Premodular, bosons: &[usize]) -> Result<Vec<usize>, CondenseError> {
    let mut h = bosons.to_vec();
    h.sort_unstable();
    h.dedup();
    if let Some(&x) = h.iter().find(|&&x| x >= p.rank()) {
        return Err(CondenseError::UnknownLabel(x));
    }
    if h.first() != Some(&0) {
        return Err(CondenseError::MissingUnit);
    }
    let lab = |x: usize| p.label(x).to_string();
    for &x in &h {
        if !p.dim(x).is_one() || !p.ring().is_invertible(x) {
            return Err(CondenseError::NotInvertible(lab(x)));
        }
        if !p.twist(x).is_zero() {
            return Err(CondenseError::NotBoson(lab(x)));
        }
    }
    for &a in &h {
        for &b in &h {
            let prod = p.ring().simple_product(a, b).expect("invertibles fuse to a simple");
            if h.binary_search(&prod).is_err() {
                return Err(CondenseError::NotClosed(lab(a), lab(b)));
            }
            if a <= b && !p.centralizes(a, b) {
                return Err(CondenseError::NotTransparent(lab(a), lab(b)));
            }
        }
    }
    Ok(h)
}

fn orbits(p: &Premodular, h: &[usize], deconfined: &[usize]) -> Result<Vec<Orbit>, CondenseError> {
    let mut seen = vec![false; p.rank()];
    let mut out = Vec::new();
    for &x in deconfined {
        if seen[x] {
            continue;
        }
        let moved: Vec<usize> = h.iter().map(|&g| p.ring().simple_product(g, x).expect("invertible action")).collect();
        let stabilizer: Vec<usize> = h.iter().zip(&moved).filter(|&(_, &y)| y == x).map(|(&g, _)| g).collect();
        let mut members = moved;
        members.sort_unstable();
        members.dedup();
        for &y in &members {
            seen[y] = true;
            if p.twist(y) != p.twist(x) {
                return Err(CondenseError::TwistNotConstant { rep: p.label(x).into(), member: p.label(y).into() });
            }
        }
        out.push(Orbit { representative: x, members, stabilizer });
    }
    Ok(out)
}

/// Result labels grouped by orbit, with the orbit-level fusion counts
/// `T(a,b;c) = Σ_{c' ∈ O_c} N_{ab}^{c'}` on representatives.
struct Layout {
    labels: Vec<String>,
    dims: Vec<Cyclo>,
    twists: Vec<Turn>,
    orbit_of: Vec<usize>,
    children: Vec<Vec<usize>>,
    orbit_dual: Vec<usize>,
    reps: Vec<usize>,
    t: Vec<Vec<(usize, u32)>>,
}

type Cell = (usize, usize, usize);

impl Layout {
    fn new(p: &Premodular, orbits: &[Orbit]) -> Layout {
        let no = orbits.len();
        let mut orbit_of_input = vec![usize::MAX; p.rank()];
        for (o, orb) in orbits.iter().enumerate() {
            for &m in &orb.members {
                orbit_of_input[m] = o;
            }
        }
        let (mut labels, mut dims, mut twists, mut orbit_of, mut children) = (vec![], vec![], vec![], vec![], vec![]);
        for (o, orb) in orbits.iter().enumerate() {
            let k = orb.stabilizer.len();
            let rep = orb.representative;
            let d = p.dim(rep).scale(&BigRational::new(BigInt::from(1), BigInt::from(k)));
            let mut ch = Vec::with_capacity(k);
            for c in 0..k {
                ch.push(labels.len());
                labels.push(if k == 1 { p.label(rep).to_string() } else { format!("{}#{}", p.label(rep), c + 1) });
                dims.push(d.clone());
                twists.push(p.twist(rep));
                orbit_of.push(o);
            }
            children.push(ch);
        }
        let orbit_dual = orbits.iter().map(|o| orbit_of_input[p.ring().dual(o.representative)]).collect();
        let reps: Vec<usize> = orbits.iter().map(|o| o.representative).collect();
        let t = (0..no * no)
            .into_par_iter()
            .map(|ab| {
                let (a, b) = (ab / no, ab % no);
                let mut acc: Vec<(usize, u32)> = Vec::new();
                for &(k, m) in p.ring().product(reps[a], reps[b]) {
                    let c = orbit_of_input[k];
                    assert!(c != usize::MAX, "deconfined labels fuse into deconfined labels");
                    match acc.iter_mut().find(|(cc, _)| *cc == c) {
                        Some(slot) => slot.1 += m,
                        None => acc.push((c, m)),
                    }
                }
                acc.sort_unstable();
                acc
            })
            .collect();
        Layout { labels, dims, twists, orbit_of, children, orbit_dual, reps, t }
    }

    fn provenance(&self) -> Vec<(usize, usize)> {
        (0..self.labels.len())
            .map(|x| {
                let o = self.orbit_of[x];
                (o, self.children[o].iter().position(|&c| c == x).expect("child"))
            })
            .collect()
    }

    fn has_splitting(&self) -> bool {
        self.children.iter().any(|c| c.len() > 1)
    }

    fn dual_choices(&self) -> Vec<Vec<usize>> {
        let nr = self.labels.len();
        let mut choices = vec![vec![usize::MAX; nr]];
        for (o, ch) in self.children.iter().enumerate() {
            let od = self.orbit_dual[o];
            if od < o {
                continue;
            }
            let dch = &self.children[od];
            assert_eq!(ch.len(), dch.len(), "dual orbits have equal stabilizers");
            if od != o {
                for choice in &mut choices {
                    for (&x, &y) in ch.iter().zip(dch) {
                        choice[x] = y;
                        choice[y] = x;
                    }
                }
                continue;
            }
            let invs = involutions(ch.len());
            choices = choices
                .into_iter()
                .flat_map(|choice| {
                    invs.iter().map(move |inv| {
                        let mut c = choice.clone();
                        for (i, &j) in inv.iter().enumerate() {
                            c[ch[i]] = ch[j];
                        }
                        c
                    })
                })
                .collect();
        }
        choices
    }

    /// All fusion rules passing the consistency filters, deduplicated up to
    /// relabeling children within orbits.
    fn solve(&self, p: &Premodular, name: &str, budget: u64) -> Result<Vec<Premodular>, CondenseError> {
        let mut nodes = 0u64;
        let mut survivors: Vec<Premodular> = Vec::new();
        for dual in self.dual_choices() {
            let Some(problem) = Problem::new(self, &dual) else { continue };
            let mut values = problem.initial.clone();
            let mut sums = problem.initial_sums();
            let mut found = Vec::new();
            problem.search(0, &mut values, &mut sums, &mut nodes, budget, &mut found)?;
            for vals in found {
                if let Some(cand) = self.candidate(p, name, &dual, &problem, &vals) {
                    if !survivors.iter().any(|s| self.same_up_to_children(s, &cand)) {
                        survivors.push(cand);
                    }
                    if survivors.len() >= MAX_SURVIVORS {
                        return Ok(survivors);
                    }
                }
            }
        }
        Ok(survivors)
    }

    fn candidate(&self, p: &Premodular, name: &str, dual: &[usize], problem: &Problem, vals: &[u32]) -> Option<Premodular> {
        let entries: Vec<(usize, usize, usize, u32)> = problem
            .cells
            .iter()
            .zip(&problem.class_of)
            .filter(|&(_, &c)| vals[c] > 0)
            .map(|(&(a, b, g), &c)| (a, b, g, vals[c]))
            .collect();
        let ring = FusionRing::new(self.labels.clone(), dual.to_vec(), entries).ok()?;
        let cand = Premodular::new(name, ring, self.dims.clone(), self.twists.clone()).ok()?;
        let s = cand.smatrix();
        let s_in = p.smatrix();
        let no = self.children.len();
        for a in 0..no {
            for b in a..no {
                let sum: Cyclo = self.children[a]
                    .iter()
                    .flat_map(|&x| self.children[b].iter().map(move |&y| (x, y)))
                    .map(|(x, y)| s.get(x, y).clone())
                    .sum();
                if &sum != s_in.get(self.reps[a], self.reps[b]) {
                    return None;
                }
            }
        }
        if self.has_splitting() && cand.is_nondegenerate().ok()? && !verlinde_holds(&cand) {
            return None;
        }
        Some(cand)
    }

    fn same_up_to_children(&self, a: &Premodular, b: &Premodular) -> bool {
        if !self.has_splitting() {
            return a == b;
        }
        let colors = Constraints { fixed: vec![], colors: Some((self.orbit_of.clone(), self.orbit_of.clone())) };
        matches!(find_equivalence_with(a, b, &colors), Ok(Some(_)))
    }
}

fn involutions(k: usize) -> Vec<Vec<usize>> {
    fn go(p: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = p.iter().position(|x| x.is_none()) else {
            out.push(p.iter().map(|x| x.expect("filled")).collect());
            return;
        };
        p[i] = Some(i);
        go(p, out);
        for j in i + 1..p.len() {
            if p[j].is_none() {
                p[i] = Some(j);
                p[j] = Some(i);
                go(p, out);
                p[j] = None;
            }
        }
        p[i] = None;
    }
    let mut out = Vec::new();
    go(&mut vec![None; k], &mut out);
    out
}

/// `N_{ij}^k = (1/D²) Σ_m S̃_{im} S̃_{jm} conj(S̃_{km}) / d_m`.
fn verlinde_holds(p: &Premodular) -> bool {
    let n = p.rank();
    let s = p.smatrix();
    let dim = p.global_dim();
    let inv_d: Vec<Cyclo> = (0..n).map(|m| p.dim(m).inverse().expect("nonzero")).collect();
    let conj: Vec<Vec<Cyclo>> = (0..n).map(|k| s.row(k).iter().map(Cyclo::conjugate).collect()).collect();
    (0..n).into_par_iter().all(|i| {
        (i..n).all(|j| {
            let w: Vec<Cyclo> = (0..n).map(|m| &(s.get(i, m) * s.get(j, m)) * &inv_d[m]).collect();
            (0..n).all(|k| {
                let sum: Cyclo = (0..n).map(|m| &w[m] * &conj[k][m]).sum();
                sum == dim.times(p.ring().mult(i, j, k) as i64)
            })
        })
    })
}

/// Integer unknowns for the child fusion coefficients, one per symmetry class of cells.
struct Problem {
    cells: Vec<Cell>,
    class_of: Vec<usize>,
    /// Class values fixed before the search (`u32::MAX` = free).
    initial: Vec<u32>,
    vars: Vec<usize>,
    constraints: Vec<(u32, Vec<(usize, u32)>)>,
    by_class: Vec<Vec<(usize, u32)>>,
}

const FREE: u32 = u32::MAX;

impl Problem {
    fn new(layout: &Layout, dual: &[usize]) -> Option<Problem> {
        let no = layout.children.len();
        let mut cells = Vec::new();
        let mut index: HashMap<Cell, usize> = HashMap::new();
        for a in 0..no {
            for b in 0..no {
                for &(c, _) in &layout.t[a * no + b] {
                    for &x in &layout.children[a] {
                        for &y in &layout.children[b] {
                            for &z in &layout.children[c] {
                                index.insert((x, y, z), cells.len());
                                cells.push((x, y, z));
                            }
                        }
                    }
                }
            }
        }
        let mut uf: Vec<usize> = (0..cells.len()).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut zero = vec![false; cells.len()];
        for (i, &(x, y, z)) in cells.iter().enumerate() {
            for partner in [(y, x, z), (dual[x], z, y), (z, dual[y], x)] {
                match index.get(&partner) {
                    Some(&j) => {
                        let (ri, rj) = (find(&mut uf, i), find(&mut uf, j));
                        uf[ri] = rj;
                    }
                    None => zero[i] = true,
                }
            }
        }
        let mut class_id: HashMap<usize, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(cells.len());
        for i in 0..cells.len() {
            let r = find(&mut uf, i);
            let next = class_id.len();
            class_of.push(*class_id.entry(r).or_insert(next));
        }
        let nclass = class_id.len();
        let mut initial = vec![FREE; nclass];
        let fix = |class: usize, v: u32, initial: &mut Vec<u32>| -> bool {
            match initial[class] {
                FREE => {
                    initial[class] = v;
                    true
                }
                w => w == v,
            }
        };
        for (i, &(x, y, z)) in cells.iter().enumerate() {
            let c = class_of[i];
            let ok = if zero[i] {
                fix(c, 0, &mut initial)
            } else if x == 0 {
                fix(c, (y == z) as u32, &mut initial)
            } else if z == 0 {
                fix(c, (y == dual[x]) as u32, &mut initial)
            } else {
                true
            };
            if !ok {
                return None;
            }
        }
        let mut constraints = Vec::new();
        for a in 0..no {
            for b in 0..no {
                for &(c, target) in &layout.t[a * no + b] {
                    for &z in &layout.children[c] {
                        let mut terms: Vec<(usize, u32)> = Vec::new();
                        for &x in &layout.children[a] {
                            for &y in &layout.children[b] {
                                let cl = class_of[index[&(x, y, z)]];
                                match terms.iter_mut().find(|(k, _)| *k == cl) {
                                    Some(t) => t.1 += 1,
                                    None => terms.push((cl, 1)),
                                }
                            }
                        }
                        constraints.push((target, terms));
                    }
                }
            }
        }
        let mut by_class = vec![Vec::new(); nclass];
        for (ci, (_, terms)) in constraints.iter().enumerate() {
            for &(cl, coef) in terms {
                by_class[cl].push((ci, coef));
            }
        }
        let vars = (0..nclass).filter(|&c| initial[c] == FREE).collect();
        Some(Problem { cells, class_of, initial, vars, constraints, by_class })
    }

    /// Per constraint: (assigned sum, unassigned term count).
    fn initial_sums(&self) -> Vec<(u64, usize)> {
        self.constraints
            .iter()
            .map(|(_, terms)| {
                terms.iter().fold((0u64, 0usize), |(s, r), &(cl, coef)| match self.initial[cl] {
                    FREE => (s, r + 1),
                    v => (s + (v as u64) * coef as u64, r),
                })
            })
            .collect()
    }

    fn feasible(&self, ci: usize, sums: &[(u64, usize)]) -> bool {
        let (target, _) = self.constraints[ci];
        let (s, r) = sums[ci];
        s <= target as u64 && (r > 0 || s == target as u64)
    }

    fn search(
        &self,
        depth: usize,
        values: &mut Vec<u32>,
        sums: &mut Vec<(u64, usize)>,
        nodes: &mut u64,
        budget: u64,
        found: &mut Vec<Vec<u32>>,
    ) -> Result<(), CondenseError> {
        if depth == 0 && !(0..self.constraints.len()).all(|ci| self.feasible(ci, sums)) {
            return Ok(());
        }
        if found.len() >= MAX_SURVIVORS * 4 {
            return Ok(());
        }
        let Some(&var) = self.vars.get(depth) else {
            found.push(values.clone());
            return Ok(());
        };
        let ub = self.by_class[var]
            .iter()
            .map(|&(ci, coef)| (self.constraints[ci].0 as u64 - sums[ci].0) / coef as u64)
            .min()
            .unwrap_or(0) as u32;
        for v in 0..=ub {
            *nodes += 1;
            if *nodes > budget {
                return Err(CondenseError::EngineLimit(budget));
            }
            values[var] = v;
            for &(ci, coef) in &self.by_class[var] {
                sums[ci].0 += v as u64 * coef as u64;
                sums[ci].1 -= 1;
            }
            if self.by_class[var].iter().all(|&(ci, _)| self.feasible(ci, sums)) {
                self.search(depth + 1, values, sums, nodes, budget, found)?;
            }
            for &(ci, coef) in &self.by_class[var] {
                sums[ci].0 -= v as u64 * coef as u64;
                sums[ci].1 += 1;
            }
        }
        values[var] = FREE;
        Ok(())
    }
}

fn ambiguity_flags(survivors: &[Premodular]) -> Vec<String> {
    let Some((first, rest)) = survivors.split_first() else {
        return Vec::new();
    };
    let n = first.rank();
    let mut flags = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = first.ring().mult(i, j, k);
                if rest.iter().any(|o| o.ring().mult(i, j, k) != v) {
                    flags.push(format!("N[{},{};{}]", first.label(i), first.label(j), first.label(k)));
                }
            }
        }
    }
    if flags.is_empty() && !rest.is_empty() {
        flags.push("duals".to_string());
    }
    flags
}

/// Components `(mapC(−e), mapD(e))` of the canonical algebra, as indices of `C ⊠ D`.
pub fn canonical_algebra(
    c: &Premodular,
    d: &Premodular,
    emb_c: &SymmetryEmbedding,
    emb_d: &SymmetryEmbedding,
) -> Result<Vec<usize>, CondenseError> {
    emb_c.same_group(emb_d)?;
    assert!(emb_c.map().iter().all(|&x| x < c.rank()) && emb_d.map().iter().all(|&y| y < d.rank()));
    let g = emb_c.group();
    Ok((0..g.order()).map(|e| emb_c.image_of(g.neg(e)) * d.rank() + emb_d.image_of(e)).collect())
}

/// Equal monodromy of `x` and `y` against every element of `E`.
pub fn is_deconfined(
    c: &Premodular,
    d: &Premodular,
    emb_c: &SymmetryEmbedding,
    emb_d: &SymmetryEmbedding,
    x: usize,
    y: usize,
) -> Result<bool, CondenseError> {
    emb_c.same_group(emb_d)?;
    let g = emb_c.group();
    let mut by_monodromy = true;
    for e in 0..g.order() {
        if c.monodromy_scalar(emb_c.image_of(e), x)? != d.monodromy_scalar(emb_d.image_of(e), y)? {
            by_monodromy = false;
            break;
        }
    }
    // (x, y) centralizes (a, b) in C ⊠ D iff S̃_xa S̃_yb = d_x d_a d_y d_b
    let by_centralizer = (0..g.order()).all(|e| {
        let (a, b) = (emb_c.image_of(g.neg(e)), emb_d.image_of(e));
        c.smatrix().get(x, a) * d.smatrix().get(y, b) == &(c.dim(x) * c.dim(a)) * &(d.dim(y) * d.dim(b))
    });
    assert_eq!(by_monodromy, by_centralizer, "the two deconfinement criteria must agree");
    Ok(by_monodromy)
}

/// `C ⊡_E D`, carrying the induced embedding `e ↦ [(mapC(e), 1)]`.
pub fn relative_tensor_product(
    c: &Premodular,
    d: &Premodular,
    emb_c: &SymmetryEmbedding,
    emb_d: &SymmetryEmbedding,
) -> Result<CondensationResult, CondenseError> {
    emb_c.check(c)?;
    emb_d.check(d)?;
    let h = canonical_algebra(c, d, emb_c, emb_d)?;
    let product = c.deligne_product(d);
    let mut out = condense_by_invertible_bosons(&product, &h)?;
    let name = format!("{} x_E {}", c.name(), d.name());
    let rename = |p: &Premodular| p.renamed(name.clone());
    out.result = rename(&out.result);
    out.alternatives = out.alternatives.iter().map(rename).collect();
    let m = d.rank();
    let locate = |x: usize| {
        let o = out.orbits.iter().position(|o| o.members.binary_search(&x).is_ok()).expect("image is deconfined");
        assert_eq!(out.splittings[o], 1, "image orbits are free");
        out.provenance.iter().position(|&(oo, _)| oo == o).expect("orbit has a child")
    };
    let map: Vec<usize> = (0..emb_c.group().order())
        .map(|e| {
            let left = locate(emb_c.image_of(e) * m);
            assert_eq!(left, locate(emb_d.image_of(e)), "left and right images of E coincide");
            left
        })
        .collect();
    out.embedding = Some(SymmetryEmbedding::new(emb_c.group().clone(), name, map)?);
    Ok(out)
}

/// The centralizer of `E` in `C` as a sub-premodular category.
#[derive(Debug, Clone)]
pub struct Centralizer {
    pub category: Premodular,
    pub embedding: SymmetryEmbedding,
    /// Input indices of the retained labels.
    pub labels: Vec<usize>,
}

pub fn relative_centralizer(c: &Premodular, emb: &SymmetryEmbedding) -> Result<Centralizer, CondenseError> {
    emb.check(c)?;
    let labels = c.centralizer(&emb.image())?;
    let name = format!("{}|E", c.name());
    let category = c.subcategory(name.clone(), &labels)?;
    let embedding = emb.restricted(name, &labels)?;
    Ok(Centralizer { category, embedding, labels })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

fn verdict_of(found: &Option<Vec<usize>>, ambiguous: bool) -> Verdict {
    match (ambiguous, found) {
        (true, _) => Verdict::Inconclusive,
        (false, Some(_)) => Verdict::True,
        (false, None) => Verdict::False,
    }
}

#[derive(Debug, Clone)]
pub struct UnitLawReport {
    pub double: Premodular,
    pub product: CondensationResult,
    pub equivalence: Option<Vec<usize>>,
    pub verdict: Verdict,
}

/// `Z(E) ⊡_E C ≃ C` respecting `E`.
pub fn verify_unit_law(c: &Premodular, emb: &SymmetryEmbedding) -> Result<UnitLawReport, CondenseError> {
    let (z, zemb) = drinfeld_double_abelian(emb.group());
    let product = relative_tensor_product(&z, c, &zemb, emb)?;
    let induced = product.embedding.as_ref().expect("relative products carry an embedding");
    let equivalence = find_equivalence(&product.result, c, Some((induced, emb)))?;
    let verdict = verdict_of(&equivalence, product.is_ambiguous());
    Ok(UnitLawReport { double: z, product, equivalence, verdict })
}

#[derive(Debug, Clone)]
pub struct StackingReport {
    pub lhs: CondensationResult,
    pub product: CondensationResult,
    pub rhs: Centralizer,
    pub equivalence: Option<Vec<usize>>,
    pub verdict: Verdict,
}

/// `(E ⊡_E C) ⊠_E (E ⊡_E D) ≃ E ⊡_E (C ⊡_E D)` respecting `E`.
pub fn verify_stacking_identity(
    c: &Premodular,
    d: &Premodular,
    emb_c: &SymmetryEmbedding,
    emb_d: &SymmetryEmbedding,
) -> Result<StackingReport, CondenseError> {
    emb_c.same_group(emb_d)?;
    let (cc, cd) = (relative_centralizer(c, emb_c)?, relative_centralizer(d, emb_d)?);
    assert!(cc.embedding.is_central(&cc.category) && cd.embedding.is_central(&cd.category), "E is central in its centralizer");
    let lhs = relative_tensor_product(&cc.category, &cd.category, &cc.embedding, &cd.embedding)?;
    let product = relative_tensor_product(c, d, emb_c, emb_d)?;
    let rhs = relative_centralizer(&product.result, product.embedding.as_ref().expect("embedding"))?;
    let lemb = lhs.embedding.as_ref().expect("embedding");
    let equivalence = find_equivalence(&lhs.result, &rhs.category, Some((lemb, &rhs.embedding)))?;
    let verdict = verdict_of(&equivalence, lhs.is_ambiguous() || product.is_ambiguous());
    Ok(StackingReport { lhs, product, rhs, equivalence, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;
    use crate::premodular::tests::{ising, rep_z2, semion, toric};

    fn z2_emb(target: &str, image: usize) -> SymmetryEmbedding {
        SymmetryEmbedding::new(AbelianGroup::new(&[2]).unwrap(), target, vec![0, image]).unwrap()
    }

    #[test]
    fn toric_on_e_is_vec() {
        let out = condense_by_invertible_bosons(&toric(), &[0, 1]).unwrap();
        assert_eq!(out.result.rank(), 1);
        assert_eq!(out.deconfined, vec![0, 1]);
        assert_eq!(out.confined, vec![2, 3]);
        assert!(out.ambiguity_flags.is_empty());
    }

    #[test]
    fn precondition_failures() {
        let tc = toric();
        assert!(matches!(condense_by_invertible_bosons(&tc, &[0, 3]), Err(CondenseError::NotBoson(_))));
        assert!(matches!(condense_by_invertible_bosons(&tc, &[0, 1, 2]), Err(CondenseError::NotClosed(..))));
        assert!(matches!(condense_by_invertible_bosons(&tc, &[1]), Err(CondenseError::MissingUnit)));
        assert!(matches!(condense_by_invertible_bosons(&ising(), &[0, 2]), Err(CondenseError::NotInvertible(_))));
        let tt = tc.deligne_product(&tc);
        // (e,1) and (1,e) bosons but only (e,e) listed along with (e,1): not closed
        assert!(matches!(condense_by_invertible_bosons(&tt, &[0, 4, 5]), Err(CondenseError::NotClosed(..))));
    }

    #[test]
    fn ising_squared_splits_uniquely() {
        let is = ising();
        let p = is.deligne_product(&is.reverse_braiding());
        let psi_psi = 4;
        let out = condense_by_invertible_bosons(&p, &[0, psi_psi]).unwrap();
        assert_eq!(out.deconfined.len(), 5);
        assert_eq!(out.result.rank(), 4);
        assert_eq!(out.splittings, vec![1, 1, 2]);
        assert!(out.ambiguity_flags.is_empty(), "{:?}", out.ambiguity_flags);
        assert!(out.alternatives.is_empty());
        assert!(out.result.is_nondegenerate().unwrap());
        assert!(find_equivalence(&out.result, &toric(), None).unwrap().is_some());
        let sigma_sigma = out.orbits[2].representative;
        assert_eq!(out.input_labels[sigma_sigma], "(sigma,sigma)");
        assert_eq!(out.result.labels()[2..], ["(sigma,sigma)#1", "(sigma,sigma)#2"]);
    }

    #[test]
    fn toric_relative_square_is_toric() {
        let tc = toric();
        let e = z2_emb("toric", 1);
        let out = relative_tensor_product(&tc, &tc, &e, &e).unwrap();
        assert_eq!(out.orbits.len(), 4);
        assert!(out.splittings.iter().all(|&k| k == 1));
        let induced = out.embedding.clone().unwrap();
        assert!(find_equivalence(&out.result, &tc, Some((&induced, &e))).unwrap().is_some());
    }

    #[test]
    fn trivial_group_gives_deligne_product() {
        let s = semion();
        let r = s.reverse_braiding();
        let (e1, e2) = (SymmetryEmbedding::trivial("semion"), SymmetryEmbedding::trivial("semion_rev"));
        let out = relative_tensor_product(&s, &r, &e1, &e2).unwrap();
        assert_eq!(out.result.rank(), 4);
        assert!(find_equivalence(&out.result, &s.deligne_product(&r), None).unwrap().is_some());
    }

    #[test]
    fn deconfinement() {
        let tc = toric();
        let e = z2_emb("toric", 1);
        assert!(is_deconfined(&tc, &tc, &e, &e, 2, 3).unwrap());
        assert!(!is_deconfined(&tc, &tc, &e, &e, 2, 0).unwrap());
        assert!(is_deconfined(&tc, &tc, &e, &e, 0, 0).unwrap());
    }

    #[test]
    fn centralizers() {
        let tc = toric();
        let cent = relative_centralizer(&tc, &z2_emb("toric", 1)).unwrap();
        assert_eq!(cent.labels, vec![0, 1]);
        assert!(cent.category.is_symmetric());
        let r = rep_z2();
        assert_eq!(relative_centralizer(&r, &z2_emb("rep", 1)).unwrap().labels, vec![0, 1]);
    }

    #[test]
    fn verifiers_on_toric() {
        let tc = toric();
        let e = z2_emb("toric", 1);
        assert_eq!(verify_unit_law(&tc, &e).unwrap().verdict, Verdict::True);
        let m = z2_emb("toric", 2);
        assert_eq!(verify_stacking_identity(&tc, &tc, &e, &m).unwrap().verdict, Verdict::True);
    }

    #[test]
    fn involution_counts() {
        assert_eq!(involutions(1).len(), 1);
        assert_eq!(involutions(2).len(), 2);
        assert_eq!(involutions(3).len(), 4);
        assert_eq!(involutions(4).len(), 10);
    }

    #[test]
    fn engine_limit_is_reported() {
        let is = ising();
        let p = is.deligne_product(&is.reverse_braiding());
        assert!(matches!(condense_with_budget(&p, &[0, 4], 1), Err(CondenseError::EngineLimit(1))));
    }
}
