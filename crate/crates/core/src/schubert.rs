//! Cohomology of `G/P` in the Schubert basis.
//!
//! Classes are indexed by `W^P` with `σ_w = [X_w]`, the class of the
//! Schubert variety of dimension `ℓ(w)`; so `σ_e` is the point class and the
//! longest representative is the unit. Structure constants come from
//! equivariant localisation: restrictions of Schubert classes to the torus
//! fixed points are evaluated at `ρ^∨` with Billey's formula, and the
//! product is solved triangularly over the fixed points. Only the
//! degree-zero constants survive, so they do not depend on the evaluation
//! point.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{qi, to_i64, Rational};
use crate::error::{Error, Result};
use crate::rootsys::{CartanType, RootSystem, Weight};
use crate::weyl::{
    longest_element, minimal_coset_reps, ParabolicSpec, WeylElement, DEFAULT_GROUP_CAP,
};

pub const SCHUBERT_SCHEMA_VERSION: u32 = 1;
/// Basis convention tag stored with cached structure constants.
pub const CONVENTION: &str = "sigma_w=[X_w],codim=dim-len";
pub const DEFAULT_PIECE_CAP: usize = 30;
pub const DEFAULT_TUPLE_CAP: u128 = 1_000_000;

/// Structure constants: `table[u][v]` lists `(w, c)` with
/// `σ_u σ_v = Σ c σ_w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    pub table: Vec<Vec<Vec<(usize, i64)>>>,
}

/// A flag variety `G/P` with its Schubert basis.
#[derive(Debug)]
pub struct FlagVariety {
    parabolic: ParabolicSpec,
    basis: Vec<WeylElement>,
    index: HashMap<WeylElement, usize>,
    dim: usize,
    duals: Vec<usize>,
    chi: Vec<Vec<Rational>>,
    piece_cap: usize,
    ring: OnceLock<Ring>,
}

/// A rational combination of Schubert classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CohomClass {
    pub coeffs: BTreeMap<usize, Rational>,
}

impl CohomClass {
    pub fn zero() -> Self {
        CohomClass::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, Rational::one());
        CohomClass { coeffs }
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        let e = self.coeffs.entry(i).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn add(&self, other: &CohomClass) -> CohomClass {
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> CohomClass {
        if c.is_zero() {
            return CohomClass::zero();
        }
        CohomClass { coeffs: self.coeffs.iter().map(|(&i, x)| (i, x * c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    /// The common codimension of all terms, if there is one.
    pub fn degree(&self, fv: &FlagVariety) -> Option<usize> {
        let mut it = self.coeffs.keys().map(|&i| fv.codim(i));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_graded(&self, fv: &FlagVariety) -> bool {
        self.is_zero() || self.degree(fv).is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TupleFilter {
    /// Every tuple with complementary codimensions.
    All,
    /// Tuples whose product is a non-zero multiple of the point class.
    Point,
    /// Point tuples with `θ = 0`.
    Levi,
}

impl std::str::FromStr for TupleFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(TupleFilter::All),
            "point" => Ok(TupleFilter::Point),
            "levi" => Ok(TupleFilter::Levi),
            other => Err(Error::usage(format!("unknown filter {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductTuple {
    pub elems: Vec<usize>,
    pub multiplicity: i64,
    pub theta: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviCheck {
    pub multiplicity: i64,
    pub theta: i64,
    pub movable: bool,
}

impl FlagVariety {
    /// `G/P_p` for a maximal parabolic.
    pub fn new(rs: &RootSystem, p: usize) -> Result<Self> {
        Self::from_parabolic(ParabolicSpec::maximal(rs, p)?)
    }

    pub fn from_parabolic(parabolic: ParabolicSpec) -> Result<Self> {
        let basis = minimal_coset_reps(&parabolic, DEFAULT_GROUP_CAP)?;
        let index: HashMap<WeylElement, usize> =
            basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let dim = parabolic.dim();
        let w0 = longest_element(&parabolic.root_system);
        let duals = basis
            .iter()
            .map(|w| index[&parabolic.min_rep(&w0.mul(w))])
            .collect();
        let mut fv = FlagVariety {
            parabolic,
            basis,
            index,
            dim,
            duals,
            chi: Vec::new(),
            piece_cap: DEFAULT_PIECE_CAP,
            ring: OnceLock::new(),
        };
        fv.chi = (0..fv.basis.len()).map(|i| fv.chi_by_roots(i)).collect();
        for i in 0..fv.basis.len() {
            if fv.chi[i] != fv.chi_by_rho(i) {
                return Err(Error::Verification(format!(
                    "χ cross-check failed at {}",
                    fv.basis[i]
                )));
            }
        }
        Ok(fv)
    }

    pub fn with_piece_cap(mut self, cap: usize) -> Self {
        self.piece_cap = cap;
        self
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.parabolic.root_system
    }

    pub fn parabolic(&self) -> &ParabolicSpec {
        &self.parabolic
    }

    pub fn basis(&self) -> &[WeylElement] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> String {
        self.parabolic.label()
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Basis index of a word (re-reduced); fails unless the element lies in `W^P`.
    pub fn element(&self, word: &str) -> Result<usize> {
        let w = WeylElement::from_word_str(self.root_system(), word)?;
        self.index_of(&w)
            .ok_or_else(|| Error::usage(format!("{w} is not in W^P for {}", self.label())))
    }

    pub fn word(&self, i: usize) -> String {
        self.basis[i].word_string()
    }

    pub fn codim(&self, i: usize) -> usize {
        self.dim - self.basis[i].length()
    }

    pub fn codim_of(&self, w: &WeylElement) -> Result<usize> {
        self.index_of(w)
            .map(|i| self.codim(i))
            .ok_or_else(|| Error::usage(format!("{w} is not in W^P for {}", self.label())))
    }

    pub fn dual(&self, i: usize) -> usize {
        self.duals[i]
    }

    /// Index of the point class `σ_e`.
    pub fn point(&self) -> usize {
        0
    }

    /// Index of the unit class.
    pub fn unit(&self) -> usize {
        self.basis.len() - 1
    }

    /// Number of basis classes in each codimension.
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![0; self.dim + 1];
        for i in 0..self.len() {
            b[self.codim(i)] += 1;
        }
        b
    }

    fn excluded(&self) -> Result<usize> {
        if !self.parabolic.is_maximal() {
            return Err(Error::usage("θ needs a maximal parabolic"));
        }
        Ok(self.parabolic.excluded_index())
    }

    fn chi_by_roots(&self, i: usize) -> Vec<Rational> {
        let w = &self.basis[i];
        let mut v = vec![Rational::zero(); self.root_system().rank()];
        for b in self.parabolic.unipotent_roots() {
            if w.act_root(&b).iter().all(|&x| x >= 0) {
                for (x, &c) in v.iter_mut().zip(&b) {
                    *x += qi(c);
                }
            }
        }
        v
    }

    fn chi_by_rho(&self, i: usize) -> Vec<Rational> {
        let rs = self.root_system();
        let rho = rs.rho();
        let mut rho_l = vec![Rational::zero(); rs.rank()];
        for b in rs.positive_roots().iter().filter(|b| self.parabolic.is_levi_root(b)) {
            for (x, &c) in rho_l.iter_mut().zip(b) {
                *x += crate::arith::q(c, 2);
            }
        }
        let winv_rho = self.basis[i].inverse().act_root_q(rho);
        (0..rs.rank())
            .map(|k| &rho[k] - qi(2) * &rho_l[k] + &winv_rho[k])
            .collect()
    }

    /// `χ_w` in simple-root coordinates.
    pub fn chi_simple(&self, i: usize) -> &[Rational] {
        &self.chi[i]
    }

    /// `χ_w` as a weight.
    pub fn chi_weight(&self, i: usize) -> Weight {
        Weight(self.root_system().simple_to_fund(&self.chi[i]))
    }

    /// `(χ_e - Σ χ_{w_i})(x_P)`.
    pub fn theta(&self, tuple: &[usize]) -> Result<i64> {
        let p = self.excluded()? - 1;
        let mut t = self.chi[self.point()][p].clone();
        for &i in tuple {
            t -= &self.chi[i][p];
        }
        Ok(to_i64(&t).expect("θ is integral"))
    }

    // ---- Chevalley rule

    /// Multiplication by the divisor class `D_i` (`i` excluded, 1-based):
    /// `D_i σ_w = Σ <ω_i, β^∨> σ_{w s_β}` over `β > 0` with
    /// `w s_β ∈ W^P` and `ℓ(w s_β) = ℓ(w) - 1`.
    pub fn chevalley_multiply(&self, slot: usize, c: &CohomClass) -> Result<CohomClass> {
        if !self.parabolic.excluded.contains(&slot) {
            return Err(Error::usage(format!(
                "slot {slot} is not a divisor of {}",
                self.label()
            )));
        }
        let rs = self.root_system();
        let mut out = CohomClass::zero();
        for (&i, coeff) in &c.coeffs {
            let w = &self.basis[i];
            for beta in rs.positive_roots() {
                let pairing = rs.coroot_coords(beta)[slot - 1];
                if pairing == 0 || !w.act_root(beta).iter().any(|&x| x < 0) {
                    continue;
                }
                let v = w.mul(&WeylElement::reflection(rs, beta)?);
                if v.length() + 1 != w.length() {
                    continue;
                }
                if let Some(j) = self.index_of(&v) {
                    out.add_term(j, coeff * qi(pairing));
                }
            }
        }
        Ok(out)
    }

    /// Index of the divisor class of a maximal parabolic.
    pub fn divisor(&self) -> Result<usize> {
        self.excluded()?;
        Ok((0..self.len()).find(|&i| self.codim(i) == 1).expect("a divisor exists"))
    }

    // ---- localisation

    /// `loc[a][v]`: restriction of the opposite Schubert class of codimension
    /// `ℓ(a)` to the fixed point `v`, evaluated at `ρ^∨`.
    fn localisations(&self) -> Vec<Vec<Rational>> {
        let n = self.len();
        let rs = self.root_system();
        let mut loc = vec![vec![Rational::zero(); n]; n];
        for (vi, v) in self.basis.iter().enumerate() {
            let word = v.word();
            let mut states: HashMap<WeylElement, Rational> = HashMap::new();
            states.insert(WeylElement::identity(rs), Rational::one());
            let mut prefix = WeylElement::identity(rs);
            for &a in word {
                let mut alpha = vec![0i64; rs.rank()];
                alpha[a - 1] = 1;
                let h: i64 = prefix.act_root(&alpha).iter().sum();
                let hq = qi(h);
                let mut next = states.clone();
                for (x, c) in &states {
                    let y = x.times_simple(a);
                    if y.length() == x.length() + 1 {
                        let e = next.entry(y).or_insert_with(Rational::zero);
                        *e += c * &hq;
                    }
                }
                states = next;
                prefix = prefix.times_simple(a);
            }
            for (ai, a) in self.basis.iter().enumerate() {
                if let Some(c) = states.get(a) {
                    loc[ai][vi] = c.clone();
                }
            }
        }
        loc
    }

    fn compute_ring(&self) -> Result<Ring> {
        for (d, &b) in self.betti().iter().enumerate() {
            if b > self.piece_cap {
                return Err(Error::Resource {
                    what: format!("codimension-{d} piece of {}", self.label()),
                    needed: b as u128,
                    cap: self.piece_cap as u128,
                });
            }
        }
        let n = self.len();
        let loc = self.localisations();
        let len: Vec<usize> = self.basis.iter().map(|w| w.length()).collect();
        let mut table = vec![vec![Vec::new(); n]; n];
        for u in 0..n {
            for v in u..n {
                let target = len[u] + len[v];
                let mut c: Vec<Rational> = vec![Rational::zero(); n];
                for w in 0..n {
                    if len[w] > target {
                        break;
                    }
                    let mut lhs = &loc[u][w] * &loc[v][w];
                    for x in 0..w {
                        if !c[x].is_zero() && !loc[x][w].is_zero() {
                            lhs -= &c[x] * &loc[x][w];
                        }
                    }
                    if !lhs.is_zero() {
                        c[w] = lhs / &loc[w][w];
                    }
                }
                let mut terms = Vec::new();
                for w in 0..n {
                    if len[w] == target && !c[w].is_zero() {
                        let k = to_i64(&c[w]).filter(|k| *k > 0).ok_or_else(|| {
                            Error::Verification(format!(
                                "non-integral or negative structure constant {}",
                                c[w]
                            ))
                        })?;
                        terms.push((self.duals[w], k));
                    }
                }
                terms.sort_unstable();
                let (du, dv) = (self.duals[u], self.duals[v]);
                table[du][dv] = terms.clone();
                table[dv][du] = terms;
            }
        }
        Ok(Ring { table })
    }

    /// The full structure-constant table, computed once.
    pub fn structure_constants(&self) -> Result<&Ring> {
        if let Some(r) = self.ring.get() {
            return Ok(r);
        }
        let r = self.compute_ring()?;
        let _ = self.ring.set(r);
        Ok(self.ring.get().expect("just set"))
    }

    /// `σ_u σ_v`.
    pub fn cup_product(&self, u: usize, v: usize) -> Result<CohomClass> {
        let ring = self.structure_constants()?;
        let mut out = CohomClass::zero();
        for &(w, c) in &ring.table[u][v] {
            out.add_term(w, qi(c));
        }
        Ok(out)
    }

    pub fn multiply(&self, a: &CohomClass, b: &CohomClass) -> Result<CohomClass> {
        let ring = self.structure_constants()?;
        let mut out = CohomClass::zero();
        for (&u, x) in &a.coeffs {
            for (&v, y) in &b.coeffs {
                for &(w, c) in &ring.table[u][v] {
                    out.add_term(w, x * y * qi(c));
                }
            }
        }
        Ok(out)
    }

    /// Sparse integer product used by the tuple enumerator.
    fn mul_sparse(&self, ring: &Ring, a: &[(usize, i128)], v: usize) -> Result<Vec<(usize, i128)>> {
        let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
        for &(u, x) in a {
            for &(w, c) in &ring.table[u][v] {
                let t = x.checked_mul(c as i128).ok_or_else(overflow)?;
                let e = acc.entry(w).or_insert(0);
                *e = e.checked_add(t).ok_or_else(overflow)?;
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| *c != 0).collect())
    }

    /// Coefficient of the point class in `σ_{w_1} ⋯ σ_{w_n}`.
    pub fn point_multiplicity(&self, tuple: &[usize]) -> Result<i64> {
        let ring = self.structure_constants()?;
        let mut cur: Vec<(usize, i128)> = vec![(self.unit(), 1)];
        for &i in tuple {
            cur = self.mul_sparse(ring, &cur, i)?;
        }
        let m = cur.iter().find(|(w, _)| *w == self.point()).map(|x| x.1).unwrap_or(0);
        i64::try_from(m).map_err(|_| overflow())
    }

    /// Levi-movability of a tuple: the point coefficient `m` is non-zero
    /// and `θ = 0`.
    pub fn is_levi_movable(&self, tuple: &[usize]) -> Result<LeviCheck> {
        let m = self.point_multiplicity(tuple)?;
        let theta = self.theta(tuple)?;
        let codims: usize = tuple.iter().map(|&i| self.codim(i)).sum();
        if m != 0 && codims == self.dim && theta < 0 {
            return Err(Error::Verification(format!(
                "θ = {theta} < 0 for a non-zero point product on {}",
                self.label()
            )));
        }
        Ok(LeviCheck { multiplicity: m, theta, movable: m != 0 && codims == self.dim && theta == 0 })
    }

    /// Number of ordered `n`-tuples with codimensions summing to `dim`.
    pub fn count_tuples(&self, n: usize) -> u128 {
        let betti = self.betti();
        let mut ways = vec![0u128; self.dim + 1];
        ways[0] = 1;
        for _ in 0..n {
            let mut next = vec![0u128; self.dim + 1];
            for (s, &w) in ways.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                for (d, &b) in betti.iter().enumerate() {
                    if s + d <= self.dim {
                        next[s + d] = next[s + d].saturating_add(w.saturating_mul(b as u128));
                    }
                }
            }
            ways = next;
        }
        ways[self.dim]
    }

    /// Ordered tuples `(w_1..w_n)` with `Σ codim = dim`, in lexicographic
    /// order of basis indices, kept according to `filter`.
    pub fn point_product_tuples(&self, n: usize, filter: TupleFilter, cap: u128) -> Result<Vec<ProductTuple>> {
        if n == 0 {
            return Err(Error::usage("tuples need n >= 1"));
        }
        let count = self.count_tuples(n);
        if count > cap {
            return Err(Error::Resource {
                what: format!("{n}-tuples on {}", self.label()),
                needed: count,
                cap,
            });
        }
        let ring = self.structure_constants()?;
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(n);
        let start = vec![(self.unit(), 1i128)];
        self.tuples_rec(ring, n, filter, 0, &start, &mut stack, &mut out)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn tuples_rec(
        &self,
        ring: &Ring,
        n: usize,
        filter: TupleFilter,
        used: usize,
        cur: &[(usize, i128)],
        stack: &mut Vec<usize>,
        out: &mut Vec<ProductTuple>,
    ) -> Result<()> {
        let left = n - stack.len();
        if left == 0 {
            if used != self.dim {
                return Ok(());
            }
            let m = cur.iter().find(|(w, _)| *w == self.point()).map(|x| x.1).unwrap_or(0);
            let m = i64::try_from(m).map_err(|_| overflow())?;
            let theta = self.theta(stack)?;
            if m != 0 && theta < 0 {
                return Err(Error::Verification(format!(
                    "θ = {theta} < 0 for a non-zero point product on {}",
                    self.label()
                )));
            }
            let keep = match filter {
                TupleFilter::All => true,
                TupleFilter::Point => m != 0,
                TupleFilter::Levi => m != 0 && theta == 0,
            };
            if keep {
                out.push(ProductTuple { elems: stack.clone(), multiplicity: m, theta });
            }
            return Ok(());
        }
        for i in 0..self.len() {
            let c = self.codim(i);
            let used2 = used + c;
            if used2 > self.dim || self.dim - used2 > self.dim * (left - 1) {
                continue;
            }
            let next = self.mul_sparse(ring, cur, i)?;
            if next.is_empty() && filter != TupleFilter::All {
                continue;
            }
            stack.push(i);
            self.tuples_rec(ring, n, filter, used2, &next, stack, out)?;
            stack.pop();
        }
        Ok(())
    }

    // ---- cache

    fn cache_path(&self, dir: &Path) -> PathBuf {
        let ex: Vec<String> = self.parabolic.excluded.iter().map(|p| p.to_string()).collect();
        dir.join(format!(
            "schubert-{}{}-p{}.jsonl",
            self.root_system().kind(),
            self.root_system().rank(),
            ex.join("_")
        ))
    }

    fn record_key(&self) -> (CartanType, usize, Vec<usize>) {
        (self.root_system().kind(), self.root_system().rank(), self.parabolic.excluded.clone())
    }

    /// Writes the structure constants as JSON lines, one record per
    /// unordered pair.
    pub fn save_cache(&self, dir: &Path) -> Result<PathBuf> {
        let ring = self.structure_constants()?;
        fs::create_dir_all(dir)?;
        let path = self.cache_path(dir);
        let mut f = fs::File::create(&path)?;
        let (kind, rank, excluded) = self.record_key();
        for u in 0..self.len() {
            for v in u..self.len() {
                let rec = CacheRecord {
                    version: SCHUBERT_SCHEMA_VERSION,
                    kind,
                    rank,
                    excluded: excluded.clone(),
                    convention: CONVENTION.to_string(),
                    u: self.word(u),
                    v: self.word(v),
                    coeffs: ring.table[u][v].iter().map(|&(w, c)| (self.word(w), c)).collect(),
                };
                writeln!(f, "{}", serde_json::to_string(&rec)?)?;
            }
        }
        Ok(path)
    }

    /// Loads cached constants when a complete, current record set exists.
    /// Returns whether the cache was used.
    pub fn load_cache(&self, dir: &Path) -> Result<bool> {
        let path = self.cache_path(dir);
        let Ok(f) = fs::File::open(&path) else {
            return Ok(false);
        };
        let n = self.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        let mut seen = 0usize;
        let key = self.record_key();
        for line in BufReader::new(f).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let Ok(rec) = serde_json::from_str::<CacheRecord>(&line) else {
                return Ok(false);
            };
            if rec.version != SCHUBERT_SCHEMA_VERSION
                || rec.convention != CONVENTION
                || (rec.kind, rec.rank, rec.excluded.clone()) != key
            {
                return Ok(false);
            }
            let (Ok(u), Ok(v)) = (self.element(&rec.u), self.element(&rec.v)) else {
                return Ok(false);
            };
            let mut terms = Vec::new();
            for (w, c) in &rec.coeffs {
                let Ok(w) = self.element(w) else {
                    return Ok(false);
                };
                terms.push((w, *c));
            }
            terms.sort_unstable();
            table[u][v] = terms.clone();
            table[v][u] = terms;
            seen += 1;
        }
        if seen != n * (n + 1) / 2 {
            return Ok(false);
        }
        let _ = self.ring.set(Ring { table });
        Ok(true)
    }

    /// Structure constants, going through the cache directory when given.
    pub fn structure_constants_cached(&self, dir: Option<&Path>) -> Result<&Ring> {
        if let Some(d) = dir {
            if self.ring.get().is_none() && !self.load_cache(d)? {
                self.structure_constants()?;
                self.save_cache(d)?;
            }
        }
        self.structure_constants()
    }

    /// Serialisable multiplication table.
    pub fn to_doc(&self) -> Result<RingDoc> {
        let ring = self.structure_constants()?;
        let mut products = Vec::new();
        for u in 0..self.len() {
            for v in u..self.len() {
                let terms = &ring.table[u][v];
                if terms.is_empty() {
                    continue;
                }
                products.push(ProductDoc {
                    u: self.word(u),
                    v: self.word(v),
                    terms: terms.iter().map(|&(w, c)| (self.word(w), c)).collect(),
                });
            }
        }
        Ok(RingDoc {
            version: SCHUBERT_SCHEMA_VERSION,
            variety: self.label(),
            convention: CONVENTION.to_string(),
            dim: self.dim,
            basis: (0..self.len())
                .map(|i| BasisDoc {
                    word: self.word(i),
                    codim: self.codim(i),
                    dual: self.word(self.dual(i)),
                    chi: self.chi[i].iter().map(crate::arith::fmt_q).collect(),
                })
                .collect(),
            products,
        })
    }
}

fn overflow() -> Error {
    Error::Resource {
        what: "integer range of class coefficients".to_string(),
        needed: u128::MAX,
        cap: i128::MAX as u128,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
struct CacheRecord {
    version: u32,
    kind: CartanType,
    rank: usize,
    excluded: Vec<usize>,
    convention: String,
    u: String,
    v: String,
    coeffs: Vec<(String, i64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BasisDoc {
    pub word: String,
    pub codim: usize,
    pub dual: String,
    pub chi: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ProductDoc {
    pub u: String,
    pub v: String,
    pub terms: Vec<(String, i64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RingDoc {
    pub version: u32,
    pub variety: String,
    pub convention: String,
    pub dim: usize,
    pub basis: Vec<BasisDoc>,
    pub products: Vec<ProductDoc>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn fv(k: CartanType, r: usize, p: usize) -> FlagVariety {
        FlagVariety::new(&RootSystem::build(k, r).unwrap(), p).unwrap()
    }

    #[test]
    fn dims_and_codims() {
        let ig = fv(CartanType::C, 3, 2);
        assert_eq!(ig.dim(), 7);
        assert_eq!(ig.codim(ig.point()), 7);
        assert_eq!(ig.codim(ig.unit()), 0);
        let g = fv(CartanType::G2, 2, 1);
        assert_eq!(g.codim(g.element("12121").unwrap()), 0);
    }

    #[test]
    fn projective_space() {
        // IG(1,4) is P^3: powers of the hyperplane class
        let p3 = fv(CartanType::C, 2, 1);
        assert_eq!(p3.betti(), vec![1, 1, 1, 1]);
        let d = p3.divisor().unwrap();
        let mut h = CohomClass::basis(p3.unit());
        for k in 1..=3 {
            h = p3.chevalley_multiply(1, &h).unwrap();
            let idx = (0..4).find(|&i| p3.codim(i) == k).unwrap();
            assert_eq!(h, CohomClass::basis(idx));
        }
        assert!(p3.chevalley_multiply(1, &h).unwrap().is_zero());
        let c2 = (0..4).find(|&i| p3.codim(i) == 2).unwrap();
        assert_eq!(p3.cup_product(d, c2).unwrap(), CohomClass::basis(p3.point()));
        assert!(p3.chevalley_multiply(2, &h).is_err());
    }

    #[test]
    fn gr24_divisor_square() {
        let g = fv(CartanType::A, 3, 2);
        let d = g.divisor().unwrap();
        let sq = g.cup_product(d, d).unwrap();
        assert_eq!(sq.coeffs.len(), 2);
        assert!(sq.coeffs.values().all(|c| *c == qi(1)));
        assert_eq!(sq.degree(&g), Some(2));
    }

    // ---- Littlewood-Richardson oracle for Grassmannians

    fn ssyt(shape: &[usize], k: u32) -> Vec<Vec<u32>> {
        // all semistandard fillings, returned as content vectors
        let cells: Vec<(usize, usize)> = shape
            .iter()
            .enumerate()
            .flat_map(|(r, &l)| (0..l).map(move |c| (r, c)))
            .collect();
        let mut out = Vec::new();
        let mut fill = vec![vec![0u32; *shape.first().unwrap_or(&0)]; shape.len()];
        fn rec(
            idx: usize,
            cells: &[(usize, usize)],
            fill: &mut Vec<Vec<u32>>,
            k: u32,
            out: &mut Vec<Vec<u32>>,
        ) {
            if idx == cells.len() {
                let mut content = vec![0u32; k as usize];
                for &(r, c) in cells {
                    content[fill[r][c] as usize - 1] += 1;
                }
                out.push(content);
                return;
            }
            let (r, c) = cells[idx];
            let lo = {
                let left = if c > 0 { fill[r][c - 1] } else { 1 };
                let up = if r > 0 { fill[r - 1][c] + 1 } else { 1 };
                left.max(up)
            };
            for v in lo..=k {
                fill[r][c] = v;
                rec(idx + 1, cells, fill, k, out);
            }
            fill[r][c] = 0;
        }
        rec(0, &cells, &mut fill, k, &mut out);
        out
    }

    fn schur(shape: &[usize], k: u32) -> HashMap<Vec<u32>, i64> {
        let mut m = HashMap::new();
        for c in ssyt(shape, k) {
            *m.entry(c).or_insert(0) += 1;
        }
        m
    }

    fn lr(lambda: &[usize], mu: &[usize], k: usize, width: usize) -> BTreeMap<Vec<usize>, i64> {
        let a = schur(lambda, k as u32);
        let b = schur(mu, k as u32);
        let mut prod: HashMap<Vec<u32>, i64> = HashMap::new();
        for (x, c) in &a {
            for (y, d) in &b {
                let e: Vec<u32> = x.iter().zip(y).map(|(p, q)| p + q).collect();
                *prod.entry(e).or_insert(0) += c * d;
            }
        }
        let mut out = BTreeMap::new();
        loop {
            prod.retain(|_, c| *c != 0);
            let Some(top) = prod.keys().max().cloned() else { break };
            let c = prod[&top];
            let shape: Vec<usize> = top.iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
            for (m, d) in schur(&shape, k as u32) {
                *prod.entry(m).or_insert(0) -= c * d;
            }
            if shape.first().copied().unwrap_or(0) <= width {
                out.insert(shape, c);
            }
        }
        out
    }

    /// Codimension partition of a Grassmannian class: `λ_j = (n-k) + j - i_j`
    /// where `I = w{1..k}`.
    fn partition(g: &FlagVariety, i: usize, n: usize, k: usize) -> Vec<usize> {
        let w = &g.basis()[i];
        // ε_j = ω_j - ω_{j-1} in fundamental coordinates
        let eps = |j: usize| -> Vec<i64> {
            let mut v = vec![0i64; n - 1];
            if j < n - 1 {
                v[j] += 1;
            }
            if j > 0 {
                v[j - 1] -= 1;
            }
            v
        };
        let mut set: Vec<usize> = (0..k)
            .map(|j| {
                let img = w.act_weight_int(&eps(j));
                (0..n).find(|&t| eps(t) == img).unwrap() + 1
            })
            .collect();
        set.sort_unstable();
        (0..k)
            .map(|j| n - k + j + 1 - set[j])
            .filter(|&x| x > 0)
            .collect()
    }

    #[test]
    fn grassmannian_littlewood_richardson() {
        for (n, k) in [(4, 2), (5, 2), (6, 3), (6, 2)] {
            let g = fv(CartanType::A, n - 1, k);
            let parts: Vec<Vec<usize>> = (0..g.len()).map(|i| partition(&g, i, n, k)).collect();
            for (i, p) in parts.iter().enumerate() {
                assert_eq!(p.iter().sum::<usize>(), g.codim(i));
            }
            for u in 0..g.len() {
                for v in 0..g.len() {
                    let got: BTreeMap<Vec<usize>, i64> = g
                        .cup_product(u, v)
                        .unwrap()
                        .coeffs
                        .iter()
                        .map(|(&w, c)| (parts[w].clone(), to_i64(c).unwrap()))
                        .collect();
                    assert_eq!(got, lr(&parts[u], &parts[v], k, n - k), "Gr({k},{n})");
                }
            }
        }
    }

    fn ring_axioms(g: &FlagVariety, rng: &mut StdRng) {
        let n = g.len();
        for u in 0..n {
            assert_eq!(g.cup_product(u, g.unit()).unwrap(), CohomClass::basis(u));
            for v in 0..n {
                let p = g.cup_product(u, v).unwrap();
                assert_eq!(p, g.cup_product(v, u).unwrap());
                assert!(p.is_graded(g));
                if g.codim(u) + g.codim(v) > g.dim() {
                    assert!(p.is_zero());
                } else if !p.is_zero() {
                    assert_eq!(p.degree(g), Some(g.codim(u) + g.codim(v)));
                }
                if g.codim(u) + g.codim(v) == g.dim() {
                    let expect = if v == g.dual(u) { qi(1) } else { qi(0) };
                    assert_eq!(p.coeff(g.point()), expect);
                }
            }
        }
        for _ in 0..40 {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let ab = g.cup_product(a, b).unwrap();
            let left = g.multiply(&ab, &CohomClass::basis(c)).unwrap();
            let bc = g.cup_product(b, c).unwrap();
            let right = g.multiply(&CohomClass::basis(a), &bc).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn ring_axioms_across_types() {
        let mut rng = StdRng::seed_from_u64(7);
        for (k, r, p) in [
            (CartanType::C, 3, 2),
            (CartanType::B, 3, 3),
            (CartanType::B, 3, 1),
            (CartanType::G2, 2, 1),
            (CartanType::G2, 2, 2),
            (CartanType::D, 4, 2),
            (CartanType::F4, 4, 1),
            (CartanType::F4, 4, 4),
            (CartanType::C, 4, 2),
        ] {
            ring_axioms(&fv(k, r, p), &mut rng);
        }
    }

    #[test]
    fn chevalley_agrees_with_ring() {
        for (k, r, p) in [
            (CartanType::C, 3, 2),
            (CartanType::G2, 2, 1),
            (CartanType::F4, 4, 1),
            (CartanType::D, 4, 1),
            (CartanType::B, 4, 3),
        ] {
            let g = fv(k, r, p);
            let d = g.divisor().unwrap();
            for u in 0..g.len() {
                let c = g.chevalley_multiply(p, &CohomClass::basis(u)).unwrap();
                assert_eq!(c, g.cup_product(d, u).unwrap(), "{k}{r}/P{p} at {}", g.word(u));
            }
        }
    }

    #[test]
    fn g2_dual_pair() {
        let g = fv(CartanType::G2, 2, 1);
        let a = g.element("1").unwrap();
        let b = g.element("2121").unwrap();
        assert_eq!(g.cup_product(a, b).unwrap().coeff(g.point()), qi(1));
        assert_eq!(g.dual(a), b);
    }

    #[test]
    fn chi_examples() {
        let a2 = fv(CartanType::A, 2, 1);
        let s1 = a2.element("1").unwrap();
        assert_eq!(a2.chi_simple(s1), &[qi(1), qi(1)]);
        for g in [fv(CartanType::C, 3, 2), fv(CartanType::F4, 4, 2)] {
            assert!(g.chi_simple(g.unit()).iter().all(|x| x.is_zero()));
            let rs = g.root_system();
            let mut two_rho_u = vec![Rational::zero(); rs.rank()];
            for b in g.parabolic().unipotent_roots() {
                for (x, &c) in two_rho_u.iter_mut().zip(&b) {
                    *x += qi(c);
                }
            }
            assert_eq!(g.chi_simple(g.point()), two_rho_u.as_slice());
        }
    }

    #[test]
    fn theta_examples() {
        let a1 = fv(CartanType::A, 1, 1);
        let (e, s) = (a1.element("e").unwrap(), a1.element("1").unwrap());
        let c = a1.is_levi_movable(&[e, s, s]).unwrap();
        assert_eq!(c, LeviCheck { multiplicity: 1, theta: 0, movable: true });
        let a2 = fv(CartanType::A, 2, 1);
        let t = [a2.element("1").unwrap(), a2.element("1").unwrap(), a2.element("21").unwrap()];
        let c = a2.is_levi_movable(&t).unwrap();
        assert_eq!((c.multiplicity, c.theta, c.movable), (1, 0, true));
        let g = fv(CartanType::F4, 4, 3);
        let c = g.is_levi_movable(&[g.point(), g.unit(), g.unit()]).unwrap();
        assert_eq!((c.multiplicity, c.theta, c.movable), (1, 0, true));
    }

    #[test]
    fn tuple_enumeration() {
        let a1 = fv(CartanType::A, 1, 1);
        let t = a1.point_product_tuples(3, TupleFilter::Point, DEFAULT_TUPLE_CAP).unwrap();
        let elems: Vec<Vec<usize>> = t.iter().map(|x| x.elems.clone()).collect();
        assert_eq!(elems, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert!(t.iter().all(|x| x.theta == 0 && x.multiplicity == 1));

        let g = fv(CartanType::G2, 2, 2);
        let t = g.point_product_tuples(2, TupleFilter::Levi, DEFAULT_TUPLE_CAP).unwrap();
        assert_eq!(t.len(), 6);
        for x in &t {
            assert_eq!(x.elems[1], g.dual(x.elems[0]));
            assert_eq!(x.multiplicity, 1);
        }
        let one = g.point_product_tuples(1, TupleFilter::All, DEFAULT_TUPLE_CAP).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].elems, vec![g.point()]);
        assert_eq!(g.count_tuples(2), 6);
        assert!(matches!(
            g.point_product_tuples(4, TupleFilter::All, 10),
            Err(Error::Resource { cap: 10, .. })
        ));
    }

    #[test]
    fn bk_inequality_on_point_tuples() {
        let g = fv(CartanType::C, 3, 2);
        for t in g.point_product_tuples(3, TupleFilter::Point, DEFAULT_TUPLE_CAP).unwrap() {
            assert!(t.theta >= 0);
        }
    }

    #[test]
    fn piece_cap() {
        let g = fv(CartanType::F4, 4, 1).with_piece_cap(1);
        assert!(matches!(g.structure_constants(), Err(Error::Resource { .. })));
    }

    #[test]
    fn cache_roundtrip() {
        let dir = std::env::temp_dir().join(format!("liecone-cache-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let g = fv(CartanType::C, 3, 2);
        let path = g.save_cache(&dir).unwrap();
        let fresh = fv(CartanType::C, 3, 2);
        assert!(fresh.load_cache(&dir).unwrap());
        assert_eq!(fresh.structure_constants().unwrap(), g.structure_constants().unwrap());
        // stale version is rejected
        let text = fs::read_to_string(&path).unwrap().replace("\"version\":1", "\"version\":0");
        fs::write(&path, text).unwrap();
        assert!(!fv(CartanType::C, 3, 2).load_cache(&dir).unwrap());
        let other = fv(CartanType::C, 3, 1);
        assert!(!other.load_cache(&dir).unwrap());
        let _ = fs::remove_dir_all(&dir);
    }
}
