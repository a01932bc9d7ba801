//! Eigencone inequality systems, membership, and the sub-eigencone and
//! projection drivers.
//!
//! An inequality attached to a point tuple `(w_1..w_n)` over `G/P` reads
//! `Σ_i <ω_P, w_i^{-1} λ_i> ≤ 0`. By `W`-invariance of the form the slot-`i`
//! functional is `λ ↦ <w_i ω_P, λ>`; its values on the fundamental weights
//! are cleared jointly across slots to a primitive integer vector.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_q, primitive, qi, to_i64, Rational};
use crate::error::{Error, Result};
use crate::rootsys::{CartanType, EmbeddingCase, RootSystem, SubsystemEmbedding, Weight};
use crate::schubert::{FlagVariety, TupleFilter, DEFAULT_TUPLE_CAP};
use crate::weyl::{
    embed_coset, embed_element, minimal_coset_reps, verify_dual_commutes, DualReport, ParabolicSpec,
    WeylElement, DEFAULT_GROUP_CAP,
};

pub const EIGENCONE_SCHEMA_VERSION: u32 = 1;

/// Which products contribute inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    /// Every non-zero point multiple `m [pt]`.
    Nonzero,
    /// Products equal to `1 [pt]`.
    Point,
    /// Levi-movable products equal to `1 [pt]`.
    Levi,
}

impl Tier {
    fn filter(self) -> TupleFilter {
        match self {
            Tier::Nonzero | Tier::Point => TupleFilter::Point,
            Tier::Levi => TupleFilter::Levi,
        }
    }

    fn keeps(self, multiplicity: i64) -> bool {
        match self {
            Tier::Nonzero => multiplicity != 0,
            Tier::Point | Tier::Levi => multiplicity == 1,
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Nonzero => "nonzero",
            Tier::Point => "point",
            Tier::Levi => "levi",
        })
    }
}

impl std::str::FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonzero" => Ok(Tier::Nonzero),
            "point" => Ok(Tier::Point),
            "levi" => Ok(Tier::Levi),
            other => Err(Error::usage(format!("unknown tier {other:?} (nonzero|point|levi)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub parabolic: usize,
    pub words: Vec<String>,
    /// One primitive integer vector per slot, in fundamental coordinates.
    pub normals: Vec<Vec<BigInt>>,
    /// `<ω_P, w_i^{-1} λ_i>` summed equals `scale` times the normal pairing.
    pub scale: Rational,
    pub tier: Tier,
    pub multiplicity: i64,
}

impl Inequality {
    /// Builds the inequality of a tuple over `G/P_p`.
    pub fn from_tuple(
        rs: &RootSystem,
        p: usize,
        elems: &[WeylElement],
        tier: Tier,
        multiplicity: i64,
    ) -> Result<Self> {
        let r = rs.rank();
        if p == 0 || p > r {
            return Err(Error::usage(format!("parabolic {p} out of range")));
        }
        let mut omega = vec![Rational::zero(); r];
        omega[p - 1] = qi(1);
        let mut flat = Vec::with_capacity(r * elems.len());
        for w in elems {
            let img = w.act_weight(&omega);
            for j in 0..r {
                let mut unit = vec![Rational::zero(); r];
                unit[j] = qi(1);
                flat.push(rs.pair_weights(&img, &unit));
            }
        }
        let (ints, scale) = primitive(&flat);
        let normals = ints.chunks(r).map(|c| c.to_vec()).collect();
        Ok(Inequality {
            parabolic: p,
            words: elems.iter().map(|w| w.word_string()).collect(),
            normals,
            scale,
            tier,
            multiplicity,
        })
    }

    pub fn n(&self) -> usize {
        self.normals.len()
    }

    /// `Σ_i ℓ_i(λ_i)` with the integer normals.
    pub fn evaluate(&self, lambdas: &[Weight]) -> Rational {
        let mut acc = Rational::zero();
        for (l, lam) in self.normals.iter().zip(lambdas) {
            for (c, x) in l.iter().zip(&lam.0) {
                if !c.is_zero() {
                    acc += Rational::from_integer(c.clone()) * x;
                }
            }
        }
        acc
    }

    /// The exact left-hand side `Σ <ω_P, w_i^{-1} λ_i>`.
    pub fn pairing(&self, lambdas: &[Weight]) -> Rational {
        self.evaluate(lambdas) * &self.scale
    }

    fn flat_i64(&self) -> Result<Vec<i64>> {
        self.normals
            .iter()
            .flatten()
            .map(|c| c.to_i64().ok_or_else(|| Error::usage("normal does not fit in i64")))
            .collect()
    }

    pub fn to_doc(&self) -> InequalityDoc {
        InequalityDoc {
            parabolic: self.parabolic,
            words: self.words.clone(),
            normals: self
                .normals
                .iter()
                .map(|l| l.iter().map(|c| c.to_i64().expect("small normal")).collect())
                .collect(),
            scale: fmt_q(&self.scale),
            multiplicity: self.multiplicity,
        }
    }
}

#[derive(Debug, Clone)]
pub struct IneqSystem {
    pub kind: CartanType,
    pub rank: usize,
    pub n: usize,
    pub tier: Tier,
    pub inequalities: Vec<Inequality>,
}

/// Generates the system over every maximal parabolic, in parabolic order
/// and lexicographic tuple order, dropping repeated normals.
pub fn generate_inequalities(rs: &RootSystem, n: usize, tier: Tier) -> Result<IneqSystem> {
    generate_inequalities_capped(rs, n, tier, DEFAULT_TUPLE_CAP)
}

pub fn generate_inequalities_capped(rs: &RootSystem, n: usize, tier: Tier, cap: u128) -> Result<IneqSystem> {
    if n == 0 {
        return Err(Error::usage("n must be at least 1"));
    }
    let mut sys = IneqSystem { kind: rs.kind(), rank: rs.rank(), n, tier, inequalities: Vec::new() };
    let mut seen = HashSet::new();
    for p in 1..=rs.rank() {
        let fv = FlagVariety::new(rs, p)?;
        for t in fv.point_product_tuples(n, tier.filter(), cap)? {
            if !tier.keeps(t.multiplicity) {
                continue;
            }
            let elems: Vec<WeylElement> = t.elems.iter().map(|&i| fv.basis()[i].clone()).collect();
            let ineq = Inequality::from_tuple(rs, p, &elems, tier, t.multiplicity)?;
            if seen.insert(ineq.normals.clone()) {
                sys.inequalities.push(ineq);
            }
        }
    }
    Ok(sys)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    /// Indices of the violated inequalities.
    pub violated: Vec<usize>,
}

impl IneqSystem {
    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    fn check_tuple(&self, lambdas: &[Weight]) -> Result<()> {
        if lambdas.len() != self.n {
            return Err(Error::usage(format!("expected {} weights, got {}", self.n, lambdas.len())));
        }
        for (i, l) in lambdas.iter().enumerate() {
            if l.rank() != self.rank {
                return Err(Error::usage(format!("weight {} has rank {}, expected {}", i + 1, l.rank(), self.rank)));
            }
            if !l.is_dominant() {
                return Err(Error::usage(format!("weight {} is not dominant", i + 1)));
            }
        }
        Ok(())
    }

    /// Exact membership test for a dominant tuple.
    pub fn membership(&self, lambdas: &[Weight]) -> Result<Membership> {
        self.check_tuple(lambdas)?;
        let violated: Vec<usize> = self
            .inequalities
            .iter()
            .enumerate()
            .filter(|(_, q)| q.evaluate(lambdas) > Rational::zero())
            .map(|(i, _)| i)
            .collect();
        Ok(Membership { member: violated.is_empty(), violated })
    }

    /// Integer normals flattened slot by slot; used by the grid drivers.
    pub fn int_matrix(&self) -> Result<IntSystem> {
        let rows = self.inequalities.iter().map(|q| q.flat_i64()).collect::<Result<_>>()?;
        Ok(IntSystem { rows })
    }

    /// The system with normals rewritten for the other member of the B/C
    /// pair of the same rank (`ω_r^C = 2 ω_r^B`, other `ω_i` shared).
    pub fn transport_bc(&self) -> Result<IneqSystem> {
        let (to, factor) = match self.kind {
            CartanType::B => (CartanType::C, qi(2)),
            CartanType::C => (CartanType::B, Rational::new(1.into(), 2.into())),
            _ => return Err(Error::usage("B/C transport needs type B or C")),
        };
        let r = self.rank;
        let mut out = IneqSystem { kind: to, rank: r, n: self.n, tier: self.tier, inequalities: Vec::new() };
        for q in &self.inequalities {
            let mut flat = Vec::new();
            for l in &q.normals {
                for (j, c) in l.iter().enumerate() {
                    let c = Rational::from_integer(c.clone());
                    flat.push(if j + 1 == r { c * &factor } else { c });
                }
            }
            let (ints, _) = primitive(&flat);
            out.inequalities.push(Inequality {
                normals: ints.chunks(r).map(|c| c.to_vec()).collect(),
                scale: Rational::zero(),
                ..q.clone()
            });
        }
        Ok(out)
    }

    pub fn normal_set(&self) -> HashSet<Vec<Vec<BigInt>>> {
        self.inequalities.iter().map(|q| q.normals.clone()).collect()
    }

    pub fn to_doc(&self) -> IneqSystemDoc {
        IneqSystemDoc {
            group: GroupDoc { kind: self.kind.to_string(), rank: self.rank },
            n: self.n,
            tier: self.tier,
            inequalities: self.inequalities.iter().map(|q| q.to_doc()).collect(),
        }
    }
}

/// Machine-integer copy of a system for bulk evaluation.
#[derive(Debug, Clone)]
pub struct IntSystem {
    pub rows: Vec<Vec<i64>>,
}

impl IntSystem {
    /// Values of every inequality on a flattened integer tuple.
    pub fn values(&self, flat: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().zip(flat).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn contains(&self, flat: &[i64]) -> bool {
        self.rows.iter().all(|r| r.iter().zip(flat).map(|(a, b)| a * b).sum::<i64>() <= 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub kind: String,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityDoc {
    pub parabolic: usize,
    pub words: Vec<String>,
    pub normals: Vec<Vec<i64>>,
    pub scale: String,
    pub multiplicity: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IneqSystemDoc {
    pub group: GroupDoc,
    pub n: usize,
    pub tier: Tier,
    pub inequalities: Vec<InequalityDoc>,
}

// ---- B/C projection

/// `Σ a_i ω_i ↦ Σ_{i<s} a_i ν_i + (Σ_{i≥s} a_i) ν_s` on the symplectic
/// side; the orthogonal side goes through `ω_r^C = 2 ω_r^B` and
/// `ν_s^C = 2 ν_s^B`.
pub fn project_weight_bc(kind: CartanType, lambda: &Weight, s: usize) -> Result<Weight> {
    let r = lambda.rank();
    if s == 0 || s >= r {
        return Err(Error::usage(format!("projection needs 1 <= s < r, got s={s}, r={r}")));
    }
    let half = Rational::new(1.into(), 2.into());
    let a: Vec<Rational> = match kind {
        CartanType::C => lambda.0.clone(),
        CartanType::B => {
            let mut a = lambda.0.clone();
            a[r - 1] = &a[r - 1] * &half;
            a
        }
        _ => return Err(Error::usage("projection is defined for types B and C")),
    };
    let mut out: Vec<Rational> = a[..s - 1].to_vec();
    out.push(a[s - 1..].iter().sum());
    if kind == CartanType::B {
        out[s - 1] = &out[s - 1] * qi(2);
    }
    Ok(Weight(out))
}

// ---- sub-eigencone driver

#[derive(Debug, Clone, Serialize)]
pub struct LiftRow {
    pub sub_words: Vec<String>,
    pub ambient_words: Vec<String>,
    pub ambient_multiplicity: i64,
    pub ambient_theta: i64,
    pub point: bool,
    pub levi: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub q: usize,
    pub p: usize,
    pub sub: String,
    pub ambient: String,
    pub rows: Vec<LiftRow>,
    pub failures: usize,
    pub dual: DualReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubconeReport {
    pub case: String,
    pub n: usize,
    pub isometric: bool,
    pub pairs: Vec<PairReport>,
    pub failures: usize,
}

impl SubconeReport {
    pub fn ok(&self) -> bool {
        self.failures == 0 && self.isometric
    }

    pub fn tuples(&self) -> usize {
        self.pairs.iter().map(|p| p.rows.len()).sum()
    }
}

/// For each matched pair `(Q, P)` and each Levi-movable `1 [pt]` tuple over
/// `M/Q`, checks that the image tuple over `G/P` is a non-zero point
/// multiple and Levi-movable.
pub fn verify_subeigencone(case: EmbeddingCase, n: usize, cap: u128) -> Result<SubconeReport> {
    let e = SubsystemEmbedding::build(case)?;
    let mut pairs = Vec::new();
    for &(q, p) in &e.matched {
        e.check_matching(q, p).map_err(|err| Error::config(format!("parabolic pair ({q},{p}): {err}")))?;
        pairs.push(verify_pair(&e, q, p, n, cap)?);
    }
    let failures = pairs.iter().map(|p| p.failures).sum();
    Ok(SubconeReport { case: e.case.name(), n, isometric: e.is_isometric(), pairs, failures })
}

pub fn verify_pair(e: &SubsystemEmbedding, q: usize, p: usize, n: usize, cap: u128) -> Result<PairReport> {
    let sub = FlagVariety::new(&e.sub, q)?;
    let amb = FlagVariety::new(&e.ambient, p)?;
    let pp = amb.parabolic().clone();
    let images: Vec<usize> = sub
        .basis()
        .iter()
        .map(|w| {
            let img = embed_coset(e, w, &pp)?;
            amb.index_of(&img)
                .ok_or_else(|| Error::Verification(format!("image of {} is not a coset rep", w.word_string())))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for t in sub.point_product_tuples(n, TupleFilter::Levi, cap)? {
        if t.multiplicity != 1 {
            continue;
        }
        let lifted: Vec<usize> = t.elems.iter().map(|&i| images[i]).collect();
        let codims: usize = lifted.iter().map(|&i| amb.codim(i)).sum();
        let chk = amb.is_levi_movable(&lifted)?;
        let point = codims == amb.dim() && chk.multiplicity > 0;
        rows.push(LiftRow {
            sub_words: t.elems.iter().map(|&i| sub.word(i)).collect(),
            ambient_words: lifted.iter().map(|&i| amb.word(i)).collect(),
            ambient_multiplicity: chk.multiplicity,
            ambient_theta: chk.theta,
            point,
            levi: chk.movable,
        });
    }
    let dual = verify_dual_commutes(e, q, p)?;
    let failures = rows.iter().filter(|r| !(r.point && r.levi)).count();
    Ok(PairReport { q, p, sub: sub.label(), ambient: amb.label(), rows, failures, dual })
}

// ---- projection driver

#[derive(Debug, Clone, Serialize)]
pub struct ProjectionReport {
    pub kind: String,
    pub r: usize,
    pub s: usize,
    pub n: usize,
    pub bound: i64,
    pub ambient_inequalities: usize,
    pub sub_inequalities: usize,
    pub grid_points: usize,
    pub grid_members: usize,
    pub facet_points: usize,
    pub facets_without_point: usize,
    /// Projected members that violate the sub system.
    pub violations: usize,
    pub section_failures: usize,
    pub invariance_checks: usize,
    pub invariance_failures: usize,
}

impl ProjectionReport {
    pub fn ok(&self) -> bool {
        self.violations == 0 && self.section_failures == 0 && self.invariance_failures == 0
    }
}

/// Calls `f` on every tuple of `len` integers in `0..=bound`, in
/// lexicographic order.
pub fn for_each_grid_point(len: usize, bound: i64, mut f: impl FnMut(&[i64])) {
    let mut cur = vec![0i64; len];
    loop {
        f(&cur);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < bound {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

fn weights_of(flat: &[Rational], r: usize) -> Vec<Weight> {
    flat.chunks(r).map(|c| Weight(c.to_vec())).collect()
}

/// Drives the projection check: every grid member of the ambient
/// Levi-tier cone, and the centroid of the members on each facet, must
/// project into the sub cone; `π ∘ ι` is checked on the grid; the
/// invariance `<ω_P, w^{-1}λ> = <ω_P, w^{-1}ιπ(λ)>` is checked for every
/// `w ∈ W_M^Q` and matched pair.
pub fn verify_projection(kind: CartanType, r: usize, s: usize, n: usize, bound: i64) -> Result<ProjectionReport> {
    let case = match kind {
        CartanType::C => EmbeddingCase::CInC { r, s },
        CartanType::B => EmbeddingCase::BInB { r, s },
        _ => return Err(Error::usage("projection is defined for types B and C")),
    };
    let e = SubsystemEmbedding::build(case)?;
    let amb = generate_inequalities(&e.ambient, n, Tier::Levi)?;
    let sub = generate_inequalities(&e.sub, n, Tier::Levi)?;
    let amb_int = amb.int_matrix()?;

    let mut report = ProjectionReport {
        kind: kind.to_string(),
        r,
        s,
        n,
        bound,
        ambient_inequalities: amb.len(),
        sub_inequalities: sub.len(),
        grid_points: 0,
        grid_members: 0,
        facet_points: 0,
        facets_without_point: 0,
        violations: 0,
        section_failures: 0,
        invariance_checks: 0,
        invariance_failures: 0,
    };

    let project = |lam: &Weight| project_weight_bc(kind, lam, s);
    let check_member = |flat: &[Rational], report: &mut ProjectionReport| -> Result<()> {
        let lams = weights_of(flat, r);
        let proj: Vec<Weight> = lams.iter().map(project).collect::<Result<_>>()?;
        if !sub.membership(&proj)?.member {
            report.violations += 1;
        }
        Ok(())
    };

    // grid pass, remembering tight sets for the facet centroids
    let mut sums: Vec<(Vec<i64>, usize)> = vec![(vec![0; r * n], 0); amb.len()];
    let mut members = Vec::new();
    for_each_grid_point(r * n, bound, |flat| {
        report.grid_points += 1;
        let vals = amb_int.values(flat);
        if vals.iter().all(|&v| v <= 0) {
            members.push(flat.to_vec());
            if flat.iter().any(|&x| x != 0) {
                for (k, &v) in vals.iter().enumerate() {
                    if v == 0 {
                        for (acc, &x) in sums[k].0.iter_mut().zip(flat) {
                            *acc += x;
                        }
                        sums[k].1 += 1;
                    }
                }
            }
        }
    });
    report.grid_members = members.len();
    // integer members: project each distinct slot weight once
    let sub_int = sub.int_matrix()?;
    let mut cache: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    for m in &members {
        let mut flat = Vec::with_capacity(s * n);
        for slot in m.chunks(r) {
            if !cache.contains_key(slot) {
                let pi = project(&Weight::from_ints(slot))?;
                let ints = pi.0.iter().map(|x| to_i64(x).expect("integral projection")).collect();
                cache.insert(slot.to_vec(), ints);
            }
            flat.extend_from_slice(&cache[slot]);
        }
        if !sub_int.contains(&flat) {
            report.violations += 1;
        }
    }
    for (sum, count) in &sums {
        if *count == 0 {
            report.facets_without_point += 1;
            continue;
        }
        let c = qi(*count as i64);
        let flat: Vec<Rational> = sum.iter().map(|&x| qi(x) / &c).collect();
        let lams = weights_of(&flat, r);
        if !amb.membership(&lams)?.member {
            return Err(Error::Verification("facet centroid left the cone".into()));
        }
        report.facet_points += 1;
        check_member(&flat, &mut report)?;
    }

    // section property on single weights of both groups
    let mut ambient_weights = Vec::new();
    for_each_grid_point(r, bound, |c| ambient_weights.push(Weight::from_ints(c)));
    let mut sub_weights = Vec::new();
    for_each_grid_point(s, bound, |c| sub_weights.push(Weight::from_ints(c)));
    for nu in &sub_weights {
        let back = project(&e.include_weight(nu)?)?;
        if &back != nu {
            report.section_failures += 1;
        }
    }
    for lam in &ambient_weights {
        let pi = project(lam)?;
        if pi != e.restrict_weight(lam)? || project(&e.include_weight(&pi)?)? != pi {
            report.section_failures += 1;
        }
    }

    // invariance of the pairing under dropping the complementary part
    for &(q, p) in &e.matched {
        let pq = ParabolicSpec::maximal(&e.sub, q)?;
        let mut omega = vec![Rational::zero(); r];
        omega[p - 1] = qi(1);
        for w in minimal_coset_reps(&pq, DEFAULT_GROUP_CAP)? {
            let winv = embed_element(&e, &w)?.inverse();
            for lam in &ambient_weights {
                let hat = e.include_weight(&project(lam)?)?;
                let a = e.ambient.pair_weights(&omega, &winv.act_weight(&lam.0));
                let b = e.ambient.pair_weights(&omega, &winv.act_weight(&hat.0));
                report.invariance_checks += 1;
                if a != b {
                    report.invariance_failures += 1;
                }
            }
        }
    }
    Ok(report)
}

// ---- grid comparisons

#[derive(Debug, Clone, Serialize)]
pub struct RegionReport {
    pub group: String,
    pub n: usize,
    pub bound: i64,
    pub points: usize,
    pub members: usize,
    pub disagreements: usize,
}

/// Compares the feasible regions of two systems on the grid `{0..bound}`.
pub fn compare_regions(a: &IneqSystem, b: &IneqSystem, bound: i64) -> Result<RegionReport> {
    if a.kind != b.kind || a.rank != b.rank || a.n != b.n {
        return Err(Error::usage("systems live over different groups"));
    }
    let (ai, bi) = (a.int_matrix()?, b.int_matrix()?);
    let mut rep = RegionReport { group: a.label(), n: a.n, bound, points: 0, members: 0, disagreements: 0 };
    for_each_grid_point(a.rank * a.n, bound, |flat| {
        rep.points += 1;
        let (x, y) = (ai.contains(flat), bi.contains(flat));
        if x {
            rep.members += 1;
        }
        if x != y {
            rep.disagreements += 1;
        }
    });
    Ok(rep)
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub index: usize,
    /// Flattened rational witness, or `None` if the search failed.
    pub point: Option<Vec<String>>,
}

/// For each inequality, looks for a point where it is tight and every
/// other inequality is strict: first among grid points with coordinates in
/// `1..=bound`, then among centroids of the tight grid points.
pub fn facet_witnesses(sys: &IneqSystem, bound: i64) -> Result<Vec<Witness>> {
    let m = sys.int_matrix()?;
    let len = sys.rank * sys.n;
    let mut direct: Vec<Option<Vec<i64>>> = vec![None; sys.len()];
    let mut sums: Vec<(Vec<i64>, i64)> = vec![(vec![0; len], 0); sys.len()];
    for_each_grid_point(len, bound - 1, |raw| {
        let flat: Vec<i64> = raw.iter().map(|x| x + 1).collect();
        let vals = m.values(&flat);
        if vals.iter().any(|&v| v > 0) {
            return;
        }
        let tight: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] == 0).collect();
        if tight.len() == 1 && direct[tight[0]].is_none() {
            direct[tight[0]] = Some(flat.clone());
        }
        for k in tight {
            for (acc, x) in sums[k].0.iter_mut().zip(&flat) {
                *acc += x;
            }
            sums[k].1 += 1;
        }
    });
    let mut out = Vec::new();
    for k in 0..sys.len() {
        let point = if let Some(p) = &direct[k] {
            Some(p.iter().map(|x| x.to_string()).collect())
        } else if sums[k].1 > 0 {
            let c = qi(sums[k].1);
            let flat: Vec<Rational> = sums[k].0.iter().map(|&x| qi(x) / &c).collect();
            let lams = weights_of(&flat, sys.rank);
            let strict = sys
                .inequalities
                .iter()
                .enumerate()
                .all(|(j, q)| (j == k) == q.evaluate(&lams).is_zero());
            strict.then(|| flat.iter().map(fmt_q).collect())
        } else {
            None
        };
        out.push(Witness { index: k, point });
    }
    Ok(out)
}

/// Parses a tuple written as `a,b,c;d,e,f;...` (one weight per slot).
pub fn parse_weights(s: &str, rank: usize) -> Result<Vec<Weight>> {
    s.split(';')
        .map(|slot| {
            let coords: Vec<Rational> = slot
                .split(',')
                .map(|c| crate::arith::parse_q(c.trim()).ok_or_else(|| Error::usage(format!("bad coordinate {c:?}"))))
                .collect::<Result<_>>()?;
            if coords.len() != rank {
                return Err(Error::usage(format!("weight {slot:?} needs {rank} coordinates")));
            }
            Ok(Weight(coords))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn a1() -> RootSystem {
        RootSystem::build(CartanType::A, 1).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    #[test]
    fn a1_triangle_inequalities() {
        let sys = generate_inequalities(&a1(), 3, Tier::Levi).unwrap();
        assert_eq!(sys.len(), 3);
        let mut normals: Vec<Vec<i64>> = sys
            .inequalities
            .iter()
            .map(|q| q.normals.iter().map(|l| l[0].to_i64().unwrap()).collect())
            .collect();
        normals.sort();
        assert_eq!(normals, vec![vec![-1, -1, 1], vec![-1, 1, -1], vec![1, -1, -1]]);
    }

    #[test]
    fn n1_gives_one_inequality_per_parabolic() {
        for (k, r) in [(CartanType::C, 3), (CartanType::G2, 2), (CartanType::A, 3)] {
            let rs = RootSystem::build(k, r).unwrap();
            let sys = generate_inequalities(&rs, 1, Tier::Levi).unwrap();
            assert_eq!(sys.len(), r);
            for q in &sys.inequalities {
                assert_eq!(q.words, vec!["e".to_string()]);
                let lam = Weight(vec![qi(1); r]);
                let direct = rs.pair_weights(&{
                    let mut o = vec![Rational::zero(); r];
                    o[q.parabolic - 1] = qi(1);
                    o
                }, &lam.0);
                assert_eq!(q.pairing(&[lam]), direct);
            }
        }
    }

    #[test]
    fn a1_membership() {
        let sys = generate_inequalities(&a1(), 3, Tier::Levi).unwrap();
        assert!(sys.membership(&[w(&[1]), w(&[1]), w(&[2])]).unwrap().member);
        let m = sys.membership(&[w(&[1]), w(&[1]), w(&[3])]).unwrap();
        assert!(!m.member);
        assert_eq!(m.violated.len(), 1);
        let bad = &sys.inequalities[m.violated[0]];
        assert_eq!(bad.normals[2][0], BigInt::from(1));
        assert!(sys.membership(&[w(&[0]), w(&[0]), w(&[0])]).unwrap().member);
        assert!(matches!(sys.membership(&[w(&[-1]), w(&[0]), w(&[0])]), Err(Error::Usage(_))));
        assert!(matches!(sys.membership(&[w(&[0]), w(&[0])]), Err(Error::Usage(_))));
    }

    #[test]
    fn projection_formula() {
        let lam = Weight(vec![qi(1), qi(2), qi(3)]);
        assert_eq!(project_weight_bc(CartanType::C, &lam, 2).unwrap(), Weight(vec![qi(1), qi(5)]));
        let lam4 = Weight::from_ints(&[1, 2, 3, 4]);
        assert_eq!(project_weight_bc(CartanType::C, &lam4, 1).unwrap(), Weight::from_ints(&[10]));
        let short = Weight::from_ints(&[2, 1, 0]);
        assert_eq!(project_weight_bc(CartanType::C, &short, 2).unwrap(), Weight::from_ints(&[2, 1]));
        // B side: ω_3^B = ω_3^C / 2
        let b = Weight::from_ints(&[1, 2, 1]);
        assert_eq!(project_weight_bc(CartanType::B, &b, 2).unwrap(), Weight(vec![qi(1), q(5, 1)]));
        assert!(project_weight_bc(CartanType::C, &lam, 3).is_err());
    }

    #[test]
    fn projection_agrees_with_restriction() {
        for (kind, case) in [
            (CartanType::C, EmbeddingCase::CInC { r: 4, s: 2 }),
            (CartanType::B, EmbeddingCase::BInB { r: 4, s: 2 }),
        ] {
            let e = SubsystemEmbedding::build(case).unwrap();
            for_each_grid_point(4, 2, |c| {
                let lam = Weight::from_ints(c);
                assert_eq!(project_weight_bc(kind, &lam, 2).unwrap(), e.restrict_weight(&lam).unwrap());
            });
        }
    }

    #[test]
    fn bc_rank2_systems_coincide() {
        let c2 = RootSystem::build(CartanType::C, 2).unwrap();
        let b2 = RootSystem::build(CartanType::B, 2).unwrap();
        let sc = generate_inequalities(&c2, 3, Tier::Levi).unwrap();
        let sb = generate_inequalities(&b2, 3, Tier::Levi).unwrap();
        assert_eq!(sc.transport_bc().unwrap().normal_set(), sb.normal_set());
    }

    #[test]
    fn normals_are_primitive_and_match_pairing() {
        let g2 = RootSystem::build(CartanType::G2, 2).unwrap();
        let sys = generate_inequalities(&g2, 3, Tier::Levi).unwrap();
        let lams = vec![w(&[1, 2]), w(&[0, 3]), w(&[2, 1])];
        for q in &sys.inequalities {
            let mut g = BigInt::zero();
            for c in q.normals.iter().flatten() {
                g = num_integer::Integer::gcd(&g, c);
            }
            assert_eq!(g, BigInt::from(1));
            assert!(q.scale > Rational::zero());
            let fv = FlagVariety::new(&g2, q.parabolic).unwrap();
            let mut omega = vec![Rational::zero(); 2];
            omega[q.parabolic - 1] = qi(1);
            let mut direct = Rational::zero();
            for (word, lam) in q.words.iter().zip(&lams) {
                let el = &fv.basis()[fv.element(word).unwrap()];
                direct += g2.pair_weights(&omega, &el.inverse().act_weight(&lam.0));
            }
            assert_eq!(q.pairing(&lams), direct);
        }
    }

    #[test]
    fn tiers_nest() {
        let c2 = RootSystem::build(CartanType::C, 2).unwrap();
        let lv = generate_inequalities(&c2, 3, Tier::Levi).unwrap().normal_set();
        let pt = generate_inequalities(&c2, 3, Tier::Point).unwrap().normal_set();
        let nz = generate_inequalities(&c2, 3, Tier::Nonzero).unwrap().normal_set();
        assert!(lv.is_subset(&pt) && pt.is_subset(&nz));
    }

    #[test]
    fn subcone_small_cases() {
        let rep = verify_subeigencone(EmbeddingCase::CInC { r: 3, s: 2 }, 3, DEFAULT_TUPLE_CAP).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert!(rep.tuples() > 0);
        let rep = verify_subeigencone(EmbeddingCase::Sl2InG2, 3, DEFAULT_TUPLE_CAP).unwrap();
        assert!(rep.ok());
        let big: Vec<&LiftRow> = rep.pairs[0].rows.iter().collect();
        assert!(big.iter().any(|r| r.ambient_words.contains(&"21212".to_string())));
    }

    #[test]
    fn projection_rank3() {
        let rep = verify_projection(CartanType::C, 3, 2, 2, 2).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert!(rep.grid_members > 0 && rep.invariance_checks > 0);
    }

    #[test]
    fn parse_tuple() {
        let t = parse_weights("1,0;0,1/2", 2).unwrap();
        assert_eq!(t[1], Weight(vec![qi(0), q(1, 2)]));
        assert!(parse_weights("1,0;1", 2).is_err());
    }
}
