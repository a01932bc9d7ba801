//! Index-set calculus for isotropic Grassmannians `IG(k, 2r) = Sp(2r)/P_k`,
//! the `Sp`/`SO` comparison, and the orbit dimensions of
//! `Sp(2(r-1)) x Sp(2)` acting on `IG(k, 2r)`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{qi, to_i64, Rational};
use crate::error::{Error, Result};
use crate::rootsys::{CartanType, EmbeddingCase, RootSystem, SubsystemEmbedding};
use crate::schubert::FlagVariety;
use crate::weyl::{embed_coset, WeylElement};

/// A `k`-subset of `{1..2r}` with no two elements summing to `2r+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSet {
    pub r: usize,
    pub elems: Vec<usize>,
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl IndexSet {
    pub fn new(r: usize, mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        let k = elems.len();
        if k == 0 || k > r {
            return Err(Error::usage(format!("need 1 <= k <= r, got k={k}, r={r}")));
        }
        if elems.windows(2).any(|w| w[0] == w[1]) || elems.iter().any(|&i| i == 0 || i > 2 * r) {
            return Err(Error::usage(format!("{elems:?} is not a subset of 1..={}", 2 * r)));
        }
        for (a, &i) in elems.iter().enumerate() {
            for &j in &elems[a + 1..] {
                if i + j == 2 * r + 1 {
                    return Err(Error::usage(format!("{i} and {j} are paired, set is not isotropic")));
                }
            }
        }
        Ok(IndexSet { r, elems })
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }

    /// `Ī = {2r+1-i}`.
    pub fn bar(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elems.iter().map(|&i| 2 * self.r + 1 - i).collect();
        v.sort_unstable();
        v
    }

    /// `Ĩ = {1..2r} \ (I ∪ Ī)`.
    pub fn tilde(&self) -> Vec<usize> {
        let bar = self.bar();
        (1..=2 * self.r)
            .filter(|i| !self.elems.contains(i) && !bar.contains(i))
            .collect()
    }

    pub fn count_le(&self, m: usize) -> usize {
        self.elems.iter().filter(|&&i| i <= m).count()
    }

    pub fn count_gt(&self, m: usize) -> usize {
        self.elems.iter().filter(|&&i| i > m).count()
    }
}

/// `|I > J|`: number of pairs `(i, j)` with `i > j`.
pub fn pairs_gt(i: &[usize], j: &[usize]) -> usize {
    i.iter().map(|a| j.iter().filter(|&b| a > b).count()).sum()
}

/// `dim IG(k, 2n) = k(4n - 3k + 1)/2`.
pub fn dim_ig(k: usize, n: usize) -> Result<usize> {
    if k > n {
        return Err(Error::usage(format!("IG({k}, {}) is empty", 2 * n)));
    }
    Ok(k * (4 * n + 1 - 3 * k) / 2)
}

/// Dimension of the Schubert cell of an index set:
/// `|I > Ĩ| + (|I > Ī| + |I > r|)/2`.
pub fn dim_from_index(set: &IndexSet) -> usize {
    let twice = pairs_gt(&set.elems, &set.bar()) + set.count_gt(set.r);
    assert!(twice.is_multiple_of(2), "parity of {set}");
    pairs_gt(&set.elems, &set.tilde()) + twice / 2
}

/// Position of `±ε_i` in the ordered basis `e_1..e_r, e_r'..e_1'`.
fn position(r: usize, signed: i64) -> usize {
    if signed > 0 {
        signed as usize
    } else {
        2 * r + 1 - (-signed) as usize
    }
}

/// `w(ε_j) = ±ε_{|s_j|}` for a Weyl element of type B or C, as signed
/// 1-based indices.
pub fn signed_permutation(rs: &RootSystem, w: &WeylElement) -> Result<Vec<i64>> {
    if !matches!(rs.kind(), CartanType::B | CartanType::C) {
        return Err(Error::usage("signed permutations need type B or C"));
    }
    let r = rs.rank();
    (0..r)
        .map(|j| {
            let mut e = vec![Rational::zero(); r];
            e[j] = qi(1);
            let img = rs.fund_to_eps(&w.act_weight(&rs.eps_to_fund(&e)));
            let i = img.iter().position(|x| !x.is_zero()).expect("non-zero image");
            let sign = to_i64(&img[i]).expect("signed unit vector");
            Ok(sign * (i as i64 + 1))
        })
        .collect()
}

/// The index set of a minimal coset representative of `Sp(2r)/P_k`.
pub fn index_of_element(fv: &FlagVariety, i: usize) -> Result<IndexSet> {
    let rs = fv.root_system();
    if rs.kind() != CartanType::C || !fv.parabolic().is_maximal() {
        return Err(Error::usage("index sets need Sp(2r)/P_k"));
    }
    let r = rs.rank();
    let k = fv.parabolic().excluded_index();
    let perm = signed_permutation(rs, &fv.basis()[i])?;
    IndexSet::new(r, perm[..k].iter().map(|&s| position(r, s)).collect())
}

/// The bijection `W^P -> index sets`, in basis order.
pub fn weyl_index_bijection(fv: &FlagVariety) -> Result<Vec<IndexSet>> {
    (0..fv.len()).map(|i| index_of_element(fv, i)).collect()
}

/// Inverse of the bijection.
pub fn element_of_index(fv: &FlagVariety, set: &IndexSet) -> Result<usize> {
    let all = weyl_index_bijection(fv)?;
    all.iter()
        .position(|x| x == set)
        .ok_or_else(|| Error::usage(format!("{set} is not a cell of {}", fv.label())))
}

/// Adds `2(r-s)` to every element greater than `s`.
pub fn lift_index(set: &IndexSet, r: usize) -> Result<IndexSet> {
    let s = set.r;
    if s >= r {
        return Err(Error::usage(format!("lift needs s < r, got s={s}, r={r}")));
    }
    IndexSet::new(
        r,
        set.elems.iter().map(|&i| if i > s { i + 2 * (r - s) } else { i }).collect(),
    )
}

/// `2(r-s)|I ≤ s|`.
pub fn codim_jump(set: &IndexSet, r: usize) -> usize {
    2 * (r - set.r) * set.count_le(set.r)
}

/// `|I ≤ s|`.
pub fn bc_delta(set: &IndexSet) -> usize {
    set.count_le(set.r)
}

/// `x_Q = Σ_{i≤k} ε_i^*` applied to an ε-vector.
fn x_q(eps: &[Rational], k: usize) -> Rational {
    eps.iter().take(k).sum()
}

fn is_positive_eps(v: &[Rational]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(|x| *x > Rational::zero())
}

/// Positive roots of `SO(2s+1)` in the ε-basis.
fn b_roots(s: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            for sign in [-1, 1] {
                let mut v = vec![Rational::zero(); s];
                v[i] = qi(1);
                v[j] = qi(sign);
                out.push(v);
            }
        }
        let mut v = vec![Rational::zero(); s];
        v[i] = qi(1);
        out.push(v);
    }
    out
}

/// `χ^H_w(x_Q)` where `H = SO(2s+1)`, with the Weyl element taken from
/// the common signed-permutation group.
pub fn chi_h_at_xq(m: &FlagVariety, i: usize) -> Result<Rational> {
    let rs = m.root_system();
    let k = m.parabolic().excluded_index();
    let perm = signed_permutation(rs, &m.basis()[i])?;
    let act = |v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); v.len()];
        for (j, x) in v.iter().enumerate() {
            let t = perm[j];
            let idx = (t.unsigned_abs() - 1) as usize;
            out[idx] += x * qi(t.signum());
        }
        out
    };
    let mut chi = vec![Rational::zero(); rs.rank()];
    for b in b_roots(rs.rank()) {
        if x_q(&b, k).is_zero() {
            continue;
        }
        if is_positive_eps(&act(&b)) {
            for (x, y) in chi.iter_mut().zip(&b) {
                *x += y;
            }
        }
    }
    Ok(x_q(&chi, k))
}

/// `χ^M_w(x_Q)` for `M = Sp(2s)`.
pub fn chi_m_at_xq(m: &FlagVariety, i: usize) -> Rational {
    let k = m.parabolic().excluded_index();
    x_q(&m.root_system().simple_to_eps(m.chi_simple(i)), k)
}

/// Identities relating `θ`, `θ^M`, `θ^H` and expected dimensions for a
/// tuple of `W_M^Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedDimReport {
    pub r: usize,
    pub s: usize,
    pub k: usize,
    pub tuple: Vec<String>,
    pub lifted: Vec<String>,
    pub theta: i64,
    pub theta_m: i64,
    pub theta_h: i64,
    pub expected_dim_g: i64,
    pub expected_dim_m: i64,
    pub levi_movable_unit_point: bool,
    pub first_identity: bool,
    pub second_identity: bool,
    pub conclusion_holds: bool,
}

impl ExpectedDimReport {
    pub fn ok(&self) -> bool {
        self.first_identity && self.second_identity && self.conclusion_holds
    }
}

/// Context for the `Sp(2s) ⊆ Sp(2r)` comparison at a fixed `k ≤ s`.
pub struct CinC {
    pub embedding: SubsystemEmbedding,
    pub m: FlagVariety,
    pub g: FlagVariety,
    pub k: usize,
    lifted: Vec<usize>,
}

impl CinC {
    pub fn new(r: usize, s: usize, k: usize) -> Result<Self> {
        let embedding = SubsystemEmbedding::build(EmbeddingCase::CInC { r, s })?;
        if k == 0 || k > s {
            return Err(Error::usage(format!("need 1 <= k <= s, got k={k}, s={s}")));
        }
        embedding.check_matching(k, k)?;
        let m = FlagVariety::new(&embedding.sub, k)?;
        let g = FlagVariety::new(&embedding.ambient, k)?;
        let lifted = (0..m.len())
            .map(|i| {
                let w = embed_coset(&embedding, &m.basis()[i], g.parabolic())?;
                g.index_of(&w).ok_or_else(|| Error::Verification("lift left W^P".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CinC { embedding, m, g, k, lifted })
    }

    pub fn r(&self) -> usize {
        self.g.root_system().rank()
    }

    pub fn s(&self) -> usize {
        self.m.root_system().rank()
    }

    /// Ambient basis index of the lift of a sub basis element.
    pub fn lift(&self, i: usize) -> usize {
        self.lifted[i]
    }

    pub fn theta_m(&self, tuple: &[usize]) -> Rational {
        let mut t = chi_m_at_xq(&self.m, self.m.point());
        for &i in tuple {
            t -= chi_m_at_xq(&self.m, i);
        }
        t
    }

    pub fn theta_h(&self, tuple: &[usize]) -> Result<Rational> {
        let mut t = chi_h_at_xq(&self.m, self.m.point())?;
        for &i in tuple {
            t -= chi_h_at_xq(&self.m, i)?;
        }
        Ok(t)
    }

    pub fn expected_dim_check(&self, tuple: &[usize]) -> Result<ExpectedDimReport> {
        let (r, s) = (self.r() as i64, self.s() as i64);
        let lifted: Vec<usize> = tuple.iter().map(|&i| self.lift(i)).collect();
        let theta = self.g.theta(&lifted)?;
        let theta_m = to_i64(&self.theta_m(tuple)).expect("integral");
        let theta_h = to_i64(&self.theta_h(tuple)?).expect("integral");
        let e_g = self.g.dim() as i64 - lifted.iter().map(|&i| self.g.codim(i) as i64).sum::<i64>();
        let e_m = self.m.dim() as i64 - tuple.iter().map(|&i| self.m.codim(i) as i64).sum::<i64>();
        let first = theta - theta_m == e_g - e_m;
        let second = 2 * (r - s) * (theta_m - theta_h) == e_g - e_m;
        let lm = self.m.is_levi_movable(tuple)?;
        let unit_point = lm.movable && lm.multiplicity == 1;
        let conclusion = !unit_point || (theta == 0 && e_g == 0);
        Ok(ExpectedDimReport {
            r: self.r(),
            s: self.s(),
            k: self.k,
            tuple: tuple.iter().map(|&i| self.m.word(i)).collect(),
            lifted: lifted.iter().map(|&i| self.g.word(i)).collect(),
            theta,
            theta_m,
            theta_h,
            expected_dim_g: e_g,
            expected_dim_m: e_m,
            levi_movable_unit_point: unit_point,
            first_identity: first,
            second_identity: second,
            conclusion_holds: conclusion,
        })
    }
}

/// Dimensions of the four orbits of `Sp(2(r-1)) x Sp(2)` on `IG(k, 2r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDims {
    /// `None` when `k > r-1` (the orbit is empty).
    pub o1: Option<usize>,
    pub o2: usize,
    pub o2_prime: usize,
    pub o3: usize,
}

pub fn orbit_dims(k: usize, r: usize) -> Result<OrbitDims> {
    if r < 2 || k == 0 || k > r {
        return Err(Error::usage(format!("orbit dimensions need 1 <= k <= r, r >= 2 (k={k}, r={r})")));
    }
    let o1 = dim_ig(k, r - 1).ok();
    let base = dim_ig(k - 1, r - 1)?;
    Ok(OrbitDims { o1, o2: base + 1 + k, o2_prime: base + 1, o3: dim_ig(k, r)? })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlagKind {
    Standard,
    Shifted,
}

/// Dimension of a Schubert cell inside one orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitCellDim {
    Empty,
    Dim(usize),
    /// Dimension if the intersection is non-empty; non-emptiness is not
    /// decided.
    DimIfNonEmpty(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertOrbitDims {
    pub o1: OrbitCellDim,
    pub o2: OrbitCellDim,
    pub o2_prime: OrbitCellDim,
    pub o3: OrbitCellDim,
}

/// Intersections of the lifted cell `C_I` (from `I^M` over `2(r-1)`) with the
/// orbits, for the standard flag or the flag shifted along `e_{i_1} + e_r`.
pub fn schubert_orbit_dims(i_m: &IndexSet, flag: FlagKind) -> Result<SchubertOrbitDims> {
    let r = i_m.r + 1;
    let lifted = lift_index(i_m, r)?;
    if !lifted.elems.iter().any(|&i| i > r + 1) {
        return Err(Error::usage(format!("{lifted} has no element greater than r+1 = {}", r + 1)));
    }
    let dm = dim_from_index(i_m);
    let big = i_m.count_gt(r - 1);
    let o3 = OrbitCellDim::DimIfNonEmpty(dim_from_index(&lifted));
    match flag {
        FlagKind::Standard => Ok(SchubertOrbitDims {
            o1: OrbitCellDim::Dim(dm),
            o2: OrbitCellDim::Dim(dm + big + 1),
            o2_prime: OrbitCellDim::Empty,
            o3,
        }),
        FlagKind::Shifted => {
            if !lifted.elems.iter().any(|&i| i < r) {
                return Err(Error::usage(format!("{lifted} has no element less than r = {r}")));
            }
            Ok(SchubertOrbitDims {
                o1: OrbitCellDim::Empty,
                o2: OrbitCellDim::Dim(dm + big),
                o2_prime: OrbitCellDim::Empty,
                o3,
            })
        }
    }
}

/// `k - Σ_j |I_j^M ≤ r-1|` for a tuple over `IG(k, 2(r-1))`, after checking
/// that the tuple is a Levi-movable product equal to the point class.
pub fn properness_identity(m: &FlagVariety, tuple: &[usize]) -> Result<i64> {
    let lm = m.is_levi_movable(tuple)?;
    if !(lm.movable && lm.multiplicity == 1) {
        return Err(Error::usage("tuple is not a Levi-movable product equal to the point class"));
    }
    let k = m.parabolic().excluded_index() as i64;
    let s = m.root_system().rank();
    let mut total = 0i64;
    for &i in tuple {
        total += index_of_element(m, i)?.count_le(s) as i64;
    }
    Ok(k - total)
}

/// Matching `Sp(2r)/P_k` and `SO(2r+1)/P_k` through the common Coxeter
/// system.
pub struct BcTransfer {
    pub c: FlagVariety,
    pub b: FlagVariety,
    /// `to_b[i]`: B-side index of the C-side basis element `i`.
    pub to_b: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BcTransferReport {
    pub r: usize,
    pub k: usize,
    pub n: usize,
    pub checked: usize,
    pub failures: Vec<Vec<String>>,
    /// Levi-movable `1·[pt]` tuples found directly on the B side.
    pub b_side: usize,
    /// The two tuple sets coincide under the word identification.
    pub bijective: bool,
    pub duals_match: bool,
}

impl BcTransfer {
    pub fn new(r: usize, k: usize) -> Result<Self> {
        let c = FlagVariety::new(&RootSystem::build(CartanType::C, r)?, k)?;
        let b = FlagVariety::new(&RootSystem::build(CartanType::B, r)?, k)?;
        let to_b = (0..c.len())
            .map(|i| b.element(&c.word(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BcTransfer { c, b, to_b })
    }

    /// Every Levi-movable `1·[pt]` product of `n` classes on the C side
    /// stays `1·[pt]` and Levi-movable on the B side.
    pub fn check(&self, n: usize, cap: u128) -> Result<BcTransferReport> {
        let mut checked = 0;
        let mut failures = Vec::new();
        let mut mapped = std::collections::BTreeSet::new();
        for t in self.c.point_product_tuples(n, crate::schubert::TupleFilter::Levi, cap)? {
            if t.multiplicity != 1 {
                continue;
            }
            checked += 1;
            let bt: Vec<usize> = t.elems.iter().map(|&i| self.to_b[i]).collect();
            mapped.insert(bt.clone());
            let lm = self.b.is_levi_movable(&bt)?;
            if !(lm.movable && lm.multiplicity == 1) {
                failures.push(t.elems.iter().map(|&i| self.c.word(i)).collect());
            }
        }
        let direct: std::collections::BTreeSet<Vec<usize>> = self
            .b
            .point_product_tuples(n, crate::schubert::TupleFilter::Levi, cap)?
            .into_iter()
            .filter(|t| t.multiplicity == 1)
            .map(|t| t.elems)
            .collect();
        let bijective = direct == mapped;
        let duals_match = (0..self.c.len()).all(|i| self.to_b[self.c.dual(i)] == self.b.dual(self.to_b[i]));
        Ok(BcTransferReport {
            r: self.c.root_system().rank(),
            k: self.c.parabolic().excluded_index(),
            n,
            checked,
            failures,
            b_side: direct.len(),
            bijective,
            duals_match,
        })
    }
}

/// `(word, index set)` pairs for every cell of `Sp(2r)/P_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexDictionary {
    pub r: usize,
    pub k: usize,
    pub cells: Vec<(String, Vec<usize>, usize)>,
}

pub fn index_dictionary(fv: &FlagVariety) -> Result<IndexDictionary> {
    let sets = weyl_index_bijection(fv)?;
    Ok(IndexDictionary {
        r: fv.root_system().rank(),
        k: fv.parabolic().excluded_index(),
        cells: sets
            .into_iter()
            .enumerate()
            .map(|(i, s)| (fv.word(i), s.elems, fv.codim(i)))
            .collect(),
    })
}

/// CSV rows `k,r,o1,o2,o2',o3` for `1 <= k <= r <= max_r`.
pub fn orbit_table_csv(max_r: usize) -> Result<String> {
    let mut out = String::from("k,r,o1,o2,o2_prime,o3\n");
    for r in 2..=max_r {
        for k in 1..=r {
            let d = orbit_dims(k, r)?;
            let o1 = d.o1.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            out.push_str(&format!("{k},{r},{o1},{},{},{}\n", d.o2, d.o2_prime, d.o3));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schubert::{TupleFilter, DEFAULT_TUPLE_CAP};

    fn ig(k: usize, r: usize) -> FlagVariety {
        FlagVariety::new(&RootSystem::build(CartanType::C, r).unwrap(), k).unwrap()
    }

    fn set(r: usize, v: &[usize]) -> IndexSet {
        IndexSet::new(r, v.to_vec()).unwrap()
    }

    #[test]
    fn validity() {
        assert!(IndexSet::new(2, vec![1, 4]).is_err());
        assert!(IndexSet::new(2, vec![1, 1]).is_err());
        assert!(IndexSet::new(2, vec![5]).is_err());
        assert!(IndexSet::new(2, vec![1, 2, 3]).is_err());
        assert_eq!(set(3, &[5, 6]).tilde(), vec![3, 4]);
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(dim_from_index(&set(3, &[5, 6])), 7);
        assert_eq!(dim_from_index(&set(3, &[1, 2])), 0);
        assert_eq!(dim_from_index(&set(2, &[2, 4])), 2);
        assert_eq!(dim_ig(2, 3).unwrap(), 7);
    }

    #[test]
    fn bijection_anchors() {
        let g = ig(2, 3);
        let sets = weyl_index_bijection(&g).unwrap();
        assert_eq!(sets[g.point()], set(3, &[1, 2]));
        assert_eq!(sets[g.unit()], set(3, &[5, 6]));
        let p = ig(1, 1);
        let sets = weyl_index_bijection(&p).unwrap();
        assert_eq!(sets, vec![set(1, &[1]), set(1, &[2])]);
    }

    /// Brute-force list of isotropic k-subsets of 1..=2r.
    fn all_sets(k: usize, r: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << (2 * r)) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let v: Vec<usize> = (0..2 * r).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            if let Ok(s) = IndexSet::new(r, v) {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn bijection_is_total_and_length_preserving() {
        for r in 1..=5 {
            for k in 1..=r {
                let g = ig(k, r);
                let mut sets = weyl_index_bijection(&g).unwrap();
                for (i, s) in sets.iter().enumerate() {
                    assert_eq!(dim_from_index(s), g.basis()[i].length(), "r={r} k={k} {s}");
                    assert_eq!(element_of_index(&g, s).unwrap(), i);
                }
                sets.sort();
                assert_eq!(sets, all_sets(k, r));
            }
        }
    }

    #[test]
    fn parity() {
        for r in 1..=5 {
            for k in 1..=r {
                for s in all_sets(k, r) {
                    assert_eq!((pairs_gt(&s.elems, &s.bar()) + s.count_gt(r)) % 2, 0);
                }
            }
        }
    }

    #[test]
    fn lifts() {
        assert_eq!(lift_index(&set(2, &[2, 4]), 3).unwrap(), set(3, &[2, 6]));
        assert_eq!(lift_index(&set(2, &[1, 2]), 3).unwrap(), set(3, &[1, 2]));
        assert_eq!(lift_index(&set(3, &[1, 4, 5]), 5).unwrap(), set(5, &[1, 8, 9]));
        assert!(IndexSet::new(3, vec![1, 4, 6]).is_err());
        assert!(lift_index(&set(3, &[1]), 3).is_err());
        assert_eq!(codim_jump(&set(2, &[2, 4]), 3), 2);
        assert_eq!(codim_jump(&set(2, &[1, 2]), 4), 8);
        assert_eq!(codim_jump(&set(2, &[3, 4]), 4), 0);
        assert_eq!(bc_delta(&set(2, &[2, 4])), 1);
        assert_eq!(bc_delta(&set(2, &[3, 4])), 0);
        assert_eq!(bc_delta(&set(3, &[1, 2, 3])), 3);
    }

    #[test]
    fn lift_agrees_with_embedding_and_codims() {
        for r in 2..=5 {
            for s in 1..r {
                for k in 1..=s {
                    let c = CinC::new(r, s, k).unwrap();
                    for i in 0..c.m.len() {
                        let im = index_of_element(&c.m, i).unwrap();
                        let ig_ = index_of_element(&c.g, c.lift(i)).unwrap();
                        assert_eq!(lift_index(&im, r).unwrap(), ig_);
                        if r <= 4 {
                            let jump = c.g.codim(c.lift(i)) - c.m.codim(i);
                            assert_eq!(jump, codim_jump(&im, r));
                            let chi_g = c.g.chi_simple(c.lift(i))[k - 1].clone();
                            assert_eq!(qi(jump as i64), chi_g - chi_m_at_xq(&c.m, i));
                            let dh = chi_m_at_xq(&c.m, i) - chi_h_at_xq(&c.m, i).unwrap();
                            assert_eq!(dh, qi(bc_delta(&im) as i64));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn expected_dimension_identities() {
        for (r, s, k) in [(3, 2, 1), (3, 2, 2), (4, 2, 2), (4, 3, 2)] {
            let c = CinC::new(r, s, k).unwrap();
            for t in c.m.point_product_tuples(3, TupleFilter::All, DEFAULT_TUPLE_CAP).unwrap() {
                let rep = c.expected_dim_check(&t.elems).unwrap();
                assert!(rep.ok(), "{rep:?}");
                assert_eq!((rep.theta - rep.theta_m) % (2 * (r - s) as i64), 0);
            }
        }
        let c = CinC::new(3, 2, 2).unwrap();
        let rep = c.expected_dim_check(&[c.m.point(), c.m.unit(), c.m.unit()]).unwrap();
        assert_eq!((rep.theta, rep.theta_m, rep.theta_h), (0, 0, 0));
        // IG(1,4) -> IG(1,6): Levi-movable point triples have expected dimension 0
        let c = CinC::new(3, 2, 1).unwrap();
        let triples = c.m.point_product_tuples(3, TupleFilter::Levi, DEFAULT_TUPLE_CAP).unwrap();
        assert!(!triples.is_empty());
        for t in triples {
            assert_eq!(c.expected_dim_check(&t.elems).unwrap().expected_dim_g, 0);
        }
    }

    #[test]
    fn orbits() {
        let d = orbit_dims(2, 3).unwrap();
        assert_eq!(d, OrbitDims { o1: Some(3), o2: 6, o2_prime: 4, o3: 7 });
        assert_eq!(orbit_dims(3, 3).unwrap().o1, None);
        for r in 2..=6 {
            for k in 1..r {
                let d = orbit_dims(k, r).unwrap();
                assert!(d.o2_prime < d.o2 && d.o2 <= d.o3);
                assert_eq!(d.o3, dim_ig(k, r).unwrap());
            }
        }
        assert!(orbit_table_csv(4).unwrap().starts_with("k,r,o1"));
    }

    #[test]
    fn orbit_cells() {
        let s = set(2, &[1, 3]);
        let std = schubert_orbit_dims(&s, FlagKind::Standard).unwrap();
        assert_eq!(std.o2_prime, OrbitCellDim::Empty);
        assert_eq!(std.o1, OrbitCellDim::Dim(dim_from_index(&s)));
        assert_eq!(std.o2, OrbitCellDim::Dim(dim_from_index(&s) + 1 + 1));
        assert_eq!(std.o3, OrbitCellDim::DimIfNonEmpty(dim_from_index(&set(3, &[1, 5]))));
        let sh = schubert_orbit_dims(&s, FlagKind::Shifted).unwrap();
        assert_eq!(sh.o1, OrbitCellDim::Empty);
        assert!(schubert_orbit_dims(&set(2, &[1, 2]), FlagKind::Standard).is_err());
        assert!(schubert_orbit_dims(&set(2, &[3, 4]), FlagKind::Shifted).is_err());
    }

    #[test]
    fn properness() {
        for (k, r) in [(1, 3), (2, 3)] {
            let m = ig(k, r - 1);
            let triples = m.point_product_tuples(3, TupleFilter::Levi, DEFAULT_TUPLE_CAP).unwrap();
            for t in triples.iter().filter(|t| t.multiplicity == 1) {
                assert_eq!(properness_identity(&m, &t.elems).unwrap(), 0);
            }
        }
        let m = ig(1, 2);
        assert!(properness_identity(&m, &[m.unit(), m.unit(), m.unit()]).is_err());
    }

    #[test]
    fn bc_transfer() {
        let t = BcTransfer::new(2, 1).unwrap();
        assert_eq!(t.c.len(), 4);
        assert_eq!(t.b.len(), 4);
        let rep = t.check(3, DEFAULT_TUPLE_CAP).unwrap();
        assert!(rep.duals_match && rep.bijective && rep.failures.is_empty());
        let t = BcTransfer::new(3, 2).unwrap();
        let rep = t.check(3, DEFAULT_TUPLE_CAP).unwrap();
        assert!(rep.duals_match && rep.bijective && rep.failures.is_empty() && rep.checked > 0);
        // unit-multiplicity Levi-movable triples coincide; higher multiplicities need not
        let unit = |fv: &FlagVariety, map: &dyn Fn(usize) -> usize| -> Vec<Vec<usize>> {
            let mut v: Vec<Vec<usize>> = fv
                .point_product_tuples(3, TupleFilter::Levi, DEFAULT_TUPLE_CAP)
                .unwrap()
                .into_iter()
                .filter(|x| x.multiplicity == 1)
                .map(|x| x.elems.iter().map(|&i| map(i)).collect())
                .collect();
            v.sort();
            v
        };
        let a = unit(&t.c, &|i| t.to_b[i]);
        let b = unit(&t.b, &|i| i);
        assert_eq!(a, b);
    }
}
