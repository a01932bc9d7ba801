//! Weyl groups as integer matrix groups, minimal parabolic coset
//! representatives, duals and embedded elements.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{qi, to_i64, Rational};
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, SubsystemEmbedding};

pub const DEFAULT_GROUP_CAP: usize = 100_000;
pub const WEYL_SCHEMA_VERSION: u32 = 1;

type Mat = Vec<Vec<i64>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += x * b[k][j];
            }
        }
    }
    out
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

#[derive(Debug)]
struct Generators {
    cartan: Mat,
    fund: Vec<Mat>,
    root: Vec<Mat>,
}

impl Generators {
    fn new(rs: &RootSystem) -> Arc<Self> {
        let a = rs.cartan().to_vec();
        let r = a.len();
        // (s_i λ)_k = λ_k - λ_i a_ik in fundamental coordinates
        let fund = (0..r)
            .map(|i| {
                (0..r)
                    .map(|k| {
                        (0..r)
                            .map(|m| i64::from(k == m) - i64::from(m == i) * a[i][k])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        // s_i β = β - <β, α_i^∨> α_i in simple coordinates
        let root = (0..r)
            .map(|i| {
                (0..r)
                    .map(|k| {
                        (0..r)
                            .map(|m| i64::from(k == m) - i64::from(k == i) * a[m][i])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Arc::new(Generators { cartan: a, fund, root })
    }

    fn rank(&self) -> usize {
        self.cartan.len()
    }
}

/// An element of the Weyl group.
///
/// Identity is the integer action on the weight lattice in
/// fundamental-weight coordinates. The stored word is the lexicographically
/// smallest reduced word, with 1-based letters.
#[derive(Clone)]
pub struct WeylElement {
    gens: Arc<Generators>,
    action: Mat,
    root_action: Mat,
    word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}
impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({})", self.word_string())
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

/// Parses a digit-string word such as `43234`; `e` or the empty string is
/// the identity.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    s.chars()
        .map(|c| match c.to_digit(10) {
            Some(d) if d > 0 => Ok(d as usize),
            _ => Err(Error::usage(format!("bad letter {c:?} in word {s:?}"))),
        })
        .collect()
}

pub fn format_word(w: &[usize]) -> String {
    if w.is_empty() {
        "e".to_string()
    } else {
        w.iter().map(|d| d.to_string()).collect()
    }
}

impl WeylElement {
    fn from_matrices(gens: Arc<Generators>, action: Mat, root_action: Mat) -> Self {
        let r = gens.rank();
        let mut m = action.clone();
        let mut word = Vec::new();
        // strip the smallest left descent: (wρ)_i < 0
        while let Some(i) = (0..r).find(|&i| m[i].iter().sum::<i64>() < 0) {
            word.push(i + 1);
            m = mat_mul(&gens.fund[i], &m);
        }
        WeylElement { gens, action, root_action, word }
    }

    pub fn identity(rs: &RootSystem) -> Self {
        let r = rs.rank();
        WeylElement {
            gens: Generators::new(rs),
            action: identity(r),
            root_action: identity(r),
            word: Vec::new(),
        }
    }

    fn identity_like(&self) -> Self {
        let r = self.rank();
        WeylElement {
            gens: self.gens.clone(),
            action: identity(r),
            root_action: identity(r),
            word: Vec::new(),
        }
    }

    /// The simple reflection `s_i` (1-based).
    pub fn simple(rs: &RootSystem, i: usize) -> Result<Self> {
        Self::from_word(rs, &[i])
    }

    /// Product of simple reflections `s_{w_1} s_{w_2} ...` (1-based letters).
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        Self::identity(rs).times_word(word)
    }

    pub fn from_word_str(rs: &RootSystem, s: &str) -> Result<Self> {
        Self::from_word(rs, &parse_word(s)?)
    }

    /// `self * s_{w_1} s_{w_2} ...`.
    pub fn times_word(&self, word: &[usize]) -> Result<Self> {
        let r = self.rank();
        let mut a = self.action.clone();
        let mut b = self.root_action.clone();
        for &i in word {
            if i == 0 || i > r {
                return Err(Error::usage(format!("letter {i} out of range 1..={r}")));
            }
            a = mat_mul(&a, &self.gens.fund[i - 1]);
            b = mat_mul(&b, &self.gens.root[i - 1]);
        }
        Ok(Self::from_matrices(self.gens.clone(), a, b))
    }

    /// `self * s_i` (1-based).
    pub fn times_simple(&self, i: usize) -> Self {
        let a = mat_mul(&self.action, &self.gens.fund[i - 1]);
        let b = mat_mul(&self.root_action, &self.gens.root[i - 1]);
        Self::from_matrices(self.gens.clone(), a, b)
    }

    /// `s_i * self` (1-based).
    pub fn simple_times(&self, i: usize) -> Self {
        let a = mat_mul(&self.gens.fund[i - 1], &self.action);
        let b = mat_mul(&self.gens.root[i - 1], &self.root_action);
        Self::from_matrices(self.gens.clone(), a, b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = mat_mul(&self.action, &other.action);
        let b = mat_mul(&self.root_action, &other.root_action);
        Self::from_matrices(self.gens.clone(), a, b)
    }

    pub fn inverse(&self) -> Self {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        self.identity_like().times_word(&rev).expect("letters in range")
    }

    /// Reflection in a positive root given in simple coordinates.
    pub fn reflection(rs: &RootSystem, gamma: &[i64]) -> Result<Self> {
        if rs.root_index(gamma).is_none() {
            return Err(Error::usage(format!("{gamma:?} is not a positive root")));
        }
        let r = rs.rank();
        let a = rs.cartan();
        let c = rs.coroot_coords(gamma);
        let gf: Vec<i64> = (0..r).map(|k| (0..r).map(|j| gamma[j] * a[j][k]).sum()).collect();
        let fund: Mat = (0..r)
            .map(|k| (0..r).map(|i| i64::from(k == i) - gf[k] * c[i]).collect())
            .collect();
        let pair: Vec<i64> = (0..r).map(|m| (0..r).map(|l| a[m][l] * c[l]).sum()).collect();
        let root: Mat = (0..r)
            .map(|k| (0..r).map(|m| i64::from(k == m) - gamma[k] * pair[m]).collect())
            .collect();
        Ok(Self::from_matrices(Generators::new(rs), fund, root))
    }

    pub fn rank(&self) -> usize {
        self.gens.rank()
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Canonical reduced word (1-based letters).
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn word_string(&self) -> String {
        format_word(&self.word)
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Action matrix on fundamental-weight coordinates (`(wλ)_k = Σ_i a_ki λ_i`).
    pub fn action(&self) -> &[Vec<i64>] {
        &self.action
    }

    /// Action matrix on simple-root coordinates.
    pub fn root_action(&self) -> &[Vec<i64>] {
        &self.root_action
    }

    pub fn act_weight(&self, lambda: &[Rational]) -> Vec<Rational> {
        self.action
            .iter()
            .map(|row| row.iter().zip(lambda).map(|(&a, x)| qi(a) * x).sum())
            .collect()
    }

    pub fn act_weight_int(&self, lambda: &[i64]) -> Vec<i64> {
        self.action
            .iter()
            .map(|row| row.iter().zip(lambda).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn act_root(&self, beta: &[i64]) -> Vec<i64> {
        self.root_action
            .iter()
            .map(|row| row.iter().zip(beta).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn act_root_q(&self, beta: &[Rational]) -> Vec<Rational> {
        self.root_action
            .iter()
            .map(|row| row.iter().zip(beta).map(|(&a, x)| qi(a) * x).sum())
            .collect()
    }

    /// `w(α_i) < 0` (1-based `i`).
    pub fn is_right_descent(&self, i: usize) -> bool {
        self.root_action.iter().any(|row| row[i - 1] < 0)
    }

    /// `ℓ(s_i w) < ℓ(w)` (1-based `i`).
    pub fn is_left_descent(&self, i: usize) -> bool {
        self.action[i - 1].iter().sum::<i64>() < 0
    }

    /// Positive roots (as indices into `rs.positive_roots()`) sent to
    /// negative roots.
    pub fn inversions(&self, rs: &RootSystem) -> Vec<usize> {
        rs.positive_roots()
            .iter()
            .enumerate()
            .filter(|(_, b)| self.act_root(b).iter().any(|&x| x < 0))
            .map(|(i, _)| i)
            .collect()
    }
}

/// A parabolic subgroup given by the excluded simple roots.
#[derive(Debug, Clone)]
pub struct ParabolicSpec {
    pub root_system: RootSystem,
    /// Excluded simple indices (1-based, sorted).
    pub excluded: Vec<usize>,
    /// Levi simple indices (1-based, sorted).
    pub levi_simple: Vec<usize>,
}

impl ParabolicSpec {
    /// The maximal parabolic `P_p` (1-based `p`).
    pub fn maximal(rs: &RootSystem, p: usize) -> Result<Self> {
        Self::new(rs, &[p])
    }

    pub fn new(rs: &RootSystem, excluded: &[usize]) -> Result<Self> {
        let mut ex: Vec<usize> = excluded.to_vec();
        ex.sort_unstable();
        ex.dedup();
        if ex.is_empty() || ex.iter().any(|&p| p == 0 || p > rs.rank()) {
            return Err(Error::usage(format!(
                "excluded set {excluded:?} invalid for rank {}",
                rs.rank()
            )));
        }
        let levi = (1..=rs.rank()).filter(|i| !ex.contains(i)).collect();
        Ok(ParabolicSpec { root_system: rs.clone(), excluded: ex, levi_simple: levi })
    }

    /// Borel subgroup: everything excluded.
    pub fn borel(rs: &RootSystem) -> Self {
        let all: Vec<usize> = (1..=rs.rank()).collect();
        Self::new(rs, &all).expect("non-empty")
    }

    pub fn is_maximal(&self) -> bool {
        self.excluded.len() == 1
    }

    /// The single excluded index of a maximal parabolic.
    pub fn excluded_index(&self) -> usize {
        self.excluded[0]
    }

    /// Whether a positive root (simple coordinates) lies in the Levi.
    pub fn is_levi_root(&self, beta: &[i64]) -> bool {
        self.excluded.iter().all(|&p| beta[p - 1] == 0)
    }

    /// Positive roots outside the Levi, in canonical order.
    pub fn unipotent_roots(&self) -> Vec<Vec<i64>> {
        self.root_system
            .positive_roots()
            .iter()
            .filter(|b| !self.is_levi_root(b))
            .cloned()
            .collect()
    }

    /// `dim G/P`.
    pub fn dim(&self) -> usize {
        self.unipotent_roots().len()
    }

    pub fn is_min_rep(&self, w: &WeylElement) -> bool {
        self.levi_simple.iter().all(|&j| !w.is_right_descent(j))
    }

    /// Minimal-length representative of `w W_P`.
    pub fn min_rep(&self, w: &WeylElement) -> WeylElement {
        let mut w = w.clone();
        while let Some(&j) = self.levi_simple.iter().find(|&&j| w.is_right_descent(j)) {
            w = w.times_simple(j);
        }
        w
    }

    pub fn label(&self) -> String {
        let ex: Vec<String> = self.excluded.iter().map(|p| p.to_string()).collect();
        format!("{}/P{}", self.root_system.label(), ex.join(","))
    }
}

fn sort_canonical(v: &mut [WeylElement]) {
    v.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.word().cmp(b.word())));
}

/// The whole Weyl group, sorted by `(length, word)`.
pub fn generate_weyl_group(rs: &RootSystem, cap: usize) -> Result<Vec<WeylElement>> {
    let e = WeylElement::identity(rs);
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(e.clone());
    queue.push_back(e);
    while let Some(w) = queue.pop_front() {
        for i in 1..=rs.rank() {
            let v = w.times_simple(i);
            if !seen.contains(&v) {
                if seen.len() >= cap {
                    return Err(Error::Resource {
                        what: format!("Weyl group of {}", rs.label()),
                        needed: weyl_group_order(rs) as u128,
                        cap: cap as u128,
                    });
                }
                seen.insert(v.clone());
                queue.push_back(v);
            }
        }
    }
    let mut out: Vec<WeylElement> = seen.into_iter().collect();
    sort_canonical(&mut out);
    Ok(out)
}

/// Order of the Weyl group from the degrees of the basic invariants.
pub fn weyl_group_order(rs: &RootSystem) -> u64 {
    degrees(rs).iter().product()
}

/// Degrees of the basic invariants.
pub fn degrees(rs: &RootSystem) -> Vec<u64> {
    use crate::rootsys::CartanType::*;
    let r = rs.rank() as u64;
    match rs.kind() {
        A => (2..=r + 1).collect(),
        B | C => (1..=r).map(|i| 2 * i).collect(),
        D => {
            let mut v: Vec<u64> = (1..r).map(|i| 2 * i).collect();
            v.push(r);
            v
        }
        G2 => vec![2, 6],
        F4 => vec![2, 6, 8, 12],
    }
}

/// Minimal coset representatives `W^P`, sorted by `(length, word)`.
pub fn minimal_coset_reps(p: &ParabolicSpec, cap: usize) -> Result<Vec<WeylElement>> {
    let rs = &p.root_system;
    let e = WeylElement::identity(rs);
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut frontier = vec![e.clone()];
    seen.insert(e);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 1..=rs.rank() {
                if w.is_left_descent(i) {
                    continue;
                }
                // W^P is closed under stripping left descents
                let v = w.simple_times(i);
                if p.is_min_rep(&v) && !seen.contains(&v) {
                    if seen.len() >= cap {
                        return Err(Error::Resource {
                            what: format!("coset representatives of {}", p.label()),
                            needed: (seen.len() + 1) as u128,
                            cap: cap as u128,
                        });
                    }
                    seen.insert(v.clone());
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<WeylElement> = seen.into_iter().collect();
    sort_canonical(&mut out);
    Ok(out)
}

/// The longest element `w_0`.
pub fn longest_element(rs: &RootSystem) -> WeylElement {
    let mut w = WeylElement::identity(rs);
    while let Some(i) = (1..=rs.rank()).find(|&i| !w.is_right_descent(i)) {
        w = w.times_simple(i);
    }
    w
}

/// The dual `min rep of w_0 w` of an element of `W^P`.
pub fn dual_rep(w: &WeylElement, p: &ParabolicSpec) -> Result<WeylElement> {
    if !p.is_min_rep(w) {
        return Err(Error::usage(format!("{w} is not a minimal representative for {}", p.label())));
    }
    Ok(p.min_rep(&longest_element(&p.root_system).mul(w)))
}

/// Image of a sub Weyl element in the ambient Weyl group: each simple
/// reflection goes to the product of the reflections in its orbit.
pub fn embed_element(e: &SubsystemEmbedding, w: &WeylElement) -> Result<WeylElement> {
    if w.rank() != e.sub.rank() {
        return Err(Error::usage("element is not over the sub root system"));
    }
    let images = simple_images(e)?;
    let mut out = WeylElement::identity(&e.ambient);
    for &i in w.word() {
        out = out.mul(&images[i - 1]);
    }
    Ok(out)
}

/// Ambient images of the sub simple reflections.
pub fn simple_images(e: &SubsystemEmbedding) -> Result<Vec<WeylElement>> {
    e.images
        .iter()
        .map(|img| {
            let mut w = WeylElement::identity(&e.ambient);
            for m in &img.orbit {
                w = w.mul(&WeylElement::reflection(&e.ambient, m)?);
            }
            Ok(w)
        })
        .collect()
}

/// Minimal representative in `W^P` of an embedded element.
pub fn embed_coset(e: &SubsystemEmbedding, w: &WeylElement, p: &ParabolicSpec) -> Result<WeylElement> {
    Ok(p.min_rep(&embed_element(e, w)?))
}

/// One row of a dual-compatibility report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DualRow {
    pub sub: String,
    pub sub_dual: String,
    pub image: String,
    pub image_of_dual: String,
    pub dual_of_image: String,
    pub commutes: bool,
    pub image_is_min_rep: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DualReport {
    pub q: usize,
    pub p: usize,
    pub rows: Vec<DualRow>,
    pub all_commute: bool,
}

/// Checks `embed(dual_Q(w)) = dual_P(embed(w))` on `W_M^Q`.
pub fn verify_dual_commutes(e: &SubsystemEmbedding, q: usize, p: usize) -> Result<DualReport> {
    let pq = ParabolicSpec::maximal(&e.sub, q)?;
    let pp = ParabolicSpec::maximal(&e.ambient, p)?;
    let mut rows = Vec::new();
    for w in minimal_coset_reps(&pq, DEFAULT_GROUP_CAP)? {
        let wd = dual_rep(&w, &pq)?;
        let raw = embed_element(e, &w)?;
        let img = pp.min_rep(&raw);
        let img_of_dual = embed_coset(e, &wd, &pp)?;
        let dual_of_img = dual_rep(&img, &pp)?;
        rows.push(DualRow {
            sub: w.word_string(),
            sub_dual: wd.word_string(),
            image: img.word_string(),
            image_of_dual: img_of_dual.word_string(),
            dual_of_image: dual_of_img.word_string(),
            commutes: img_of_dual == dual_of_img,
            image_is_min_rep: pp.is_min_rep(&raw),
        });
    }
    let all_commute = rows.iter().all(|r| r.commutes);
    Ok(DualReport { q, p, rows, all_commute })
}

/// Coefficients of `Σ_{w} q^{ℓ(w)}`.
pub fn length_generating_function(elems: &[WeylElement]) -> Vec<u64> {
    let top = elems.iter().map(|w| w.length()).max().unwrap_or(0);
    let mut c = vec![0u64; top + 1];
    for w in elems {
        c[w.length()] += 1;
    }
    c
}

/// Index of each element in a list, keyed by action.
pub fn index_of(elems: &[WeylElement]) -> HashMap<WeylElement, usize> {
    elems.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect()
}

/// Restriction of an embedded element to the sub Cartan: the action of
/// `embed(w)` on an included sub weight, restricted back.
pub fn restricted_action(e: &SubsystemEmbedding, w: &WeylElement, nu: &[i64]) -> Result<Vec<Rational>> {
    let img = embed_element(e, w)?;
    let nuq = crate::rootsys::Weight::from_ints(nu);
    let amb = e.include_weight(&nuq)?;
    let moved = crate::rootsys::Weight(img.act_weight(&amb.0));
    Ok(e.restrict_weight(&moved)?.0)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CosetRow {
    pub word: String,
    pub length: usize,
    pub dual: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CosetTableDoc {
    pub version: u32,
    pub group: String,
    pub excluded: Vec<usize>,
    pub dim: usize,
    pub rows: Vec<CosetRow>,
}

pub fn coset_table(p: &ParabolicSpec, cap: usize) -> Result<CosetTableDoc> {
    let reps = minimal_coset_reps(p, cap)?;
    let rows = reps
        .iter()
        .map(|w| {
            Ok(CosetRow {
                word: w.word_string(),
                length: w.length(),
                dual: dual_rep(w, p)?.word_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CosetTableDoc {
        version: WEYL_SCHEMA_VERSION,
        group: p.root_system.label(),
        excluded: p.excluded.clone(),
        dim: p.dim(),
        rows,
    })
}

/// Integer vector check used by callers that map rational data into roots.
pub fn as_int_vec(v: &[Rational]) -> Option<Vec<i64>> {
    v.iter().map(to_i64).collect()
}
