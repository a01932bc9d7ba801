//! Root systems in the Bourbaki ε-basis with the normalised Killing form, and
//! the sub-root-system embeddings behind the sub-eigencone families.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{dot, fmt_q, invert, q, qi, Rational};
use crate::error::{Error, Result};

/// Version tag of the JSON documents emitted by this module.
pub const ROOTSYS_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G2,
    F4,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::G2 => "G",
            CartanType::F4 => "F",
        };
        f.write_str(s)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "G" | "G2" => Ok(CartanType::G2),
            "F" | "F4" => Ok(CartanType::F4),
            other => Err(Error::config(format!("unknown Cartan type {other:?}"))),
        }
    }
}

/// Parses group labels such as `C3`, `G2`, `Sp(6)`, `SO(7)`, `A1`.
pub fn parse_group(label: &str) -> Result<(CartanType, usize)> {
    let l = label.trim();
    let upper = l.to_ascii_uppercase();
    let inner = |s: &str| -> Result<usize> {
        s.trim_end_matches(')')
            .parse::<usize>()
            .map_err(|_| Error::config(format!("cannot parse group {label:?}")))
    };
    if let Some(rest) = upper.strip_prefix("SP(") {
        let n = inner(rest)?;
        if n % 2 != 0 || n < 2 {
            return Err(Error::config(format!("Sp({n}) needs an even size")));
        }
        return Ok((CartanType::C, n / 2));
    }
    if let Some(rest) = upper.strip_prefix("SO(") {
        let n = inner(rest)?;
        return match n % 2 {
            1 if n >= 3 => Ok((CartanType::B, (n - 1) / 2)),
            0 if n >= 6 => Ok((CartanType::D, n / 2)),
            _ => Err(Error::config(format!("unsupported group SO({n})"))),
        };
    }
    if let Some(rest) = upper.strip_prefix("SL(") {
        let n = inner(rest)?;
        if n < 2 {
            return Err(Error::config("SL(n) needs n >= 2"));
        }
        return Ok((CartanType::A, n - 1));
    }
    let (kind, digits) = upper.split_at(1);
    let kind: CartanType = kind.parse()?;
    let rank: usize = digits
        .parse()
        .map_err(|_| Error::config(format!("cannot parse group {label:?}")))?;
    Ok((kind, rank))
}

/// A weight written in the fundamental-weight basis of a fixed root system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn from_ints(c: &[i64]) -> Self {
        Weight(c.iter().map(|&x| qi(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rational::zero(); rank])
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_q).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Either a weight (fundamental-weight coordinates) or a root-lattice
/// vector (simple-root coordinates); both live in `h*`.
#[derive(Debug, Clone, Copy)]
pub enum Vector<'a> {
    Weight(&'a [Rational]),
    Root(&'a [Rational]),
}

/// Exact root-system data for one simple Lie algebra.
#[derive(Debug, Clone)]
pub struct RootSystem {
    kind: CartanType,
    rank: usize,
    simple_roots: Vec<Vec<Rational>>,
    eps_scale: Rational,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational>>,
    positive_roots: Vec<Vec<i64>>,
    killing: Vec<Vec<Rational>>,
    weight_gram: Vec<Vec<Rational>>,
    fundamental_weights: Vec<Vec<Rational>>,
    highest_root: Vec<i64>,
    dual_basis: Vec<Vec<Rational>>,
    rho: Vec<Rational>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.rank == other.rank
    }
}
impl Eq for RootSystem {}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    (0..dim).map(|j| if i == j { qi(1) } else { qi(0) }).collect()
}

fn diff(dim: usize, i: usize, j: usize) -> Vec<Rational> {
    let mut v = unit(dim, i);
    v[j] -= qi(1);
    v
}

fn simple_roots_eps(kind: CartanType, rank: usize) -> Vec<Vec<Rational>> {
    let r = rank;
    match kind {
        CartanType::A => (0..r).map(|i| diff(r + 1, i, i + 1)).collect(),
        CartanType::B => {
            let mut v: Vec<_> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
            v.push(unit(r, r - 1));
            v
        }
        CartanType::C => {
            let mut v: Vec<_> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
            v.push(unit(r, r - 1).into_iter().map(|x| x * qi(2)).collect());
            v
        }
        CartanType::D => {
            let mut v: Vec<_> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
            let mut last = unit(r, r - 2);
            last[r - 1] = qi(1);
            v.push(last);
            v
        }
        CartanType::G2 => vec![
            vec![qi(1), qi(-1), qi(0)],
            vec![qi(-2), qi(1), qi(1)],
        ],
        CartanType::F4 => vec![
            vec![qi(0), qi(1), qi(-1), qi(0)],
            vec![qi(0), qi(0), qi(1), qi(-1)],
            vec![qi(0), qi(0), qi(0), qi(1)],
            vec![q(1, 2), q(-1, 2), q(-1, 2), q(-1, 2)],
        ],
    }
}

fn validate_rank(kind: CartanType, rank: usize) -> Result<()> {
    let ok = match kind {
        CartanType::A | CartanType::B | CartanType::C => rank >= 1,
        CartanType::D => rank >= 3,
        CartanType::G2 => rank == 2,
        CartanType::F4 => rank == 4,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::config(format!("invalid rank {rank} for type {kind}")))
    }
}

impl RootSystem {
    /// Builds the root system of the given Cartan type. Positive roots are
    /// produced by reflection closure from the simple roots and ordered by
    /// height, ties broken lexicographically on simple-root coordinates.
    pub fn build(kind: CartanType, rank: usize) -> Result<RootSystem> {
        validate_rank(kind, rank)?;
        let simple = simple_roots_eps(kind, rank);
        let r = rank;
        let raw: Vec<Vec<Rational>> = (0..r)
            .map(|i| (0..r).map(|j| dot(&simple[i], &simple[j])).collect())
            .collect();
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let a = qi(2) * &raw[i][j] / &raw[j][j];
                        assert!(a.is_integer(), "non-integral Cartan entry");
                        crate::arith::to_i64(&a).unwrap()
                    })
                    .collect()
            })
            .collect();

        let positive_roots = reflection_closure(&cartan);
        let highest_root = positive_roots.last().unwrap().clone();
        let theta_eps = combine(&highest_root, &simple);
        let eps_scale = qi(2) / dot(&theta_eps, &theta_eps);
        let killing: Vec<Vec<Rational>> = raw
            .iter()
            .map(|row| row.iter().map(|x| x * &eps_scale).collect())
            .collect();

        let cartan_q: Vec<Vec<Rational>> = cartan
            .iter()
            .map(|row| row.iter().map(|&x| qi(x)).collect())
            .collect();
        let cartan_inv = invert(&cartan_q).expect("Cartan matrix is invertible");
        let half_len: Vec<Rational> = (0..r).map(|i| &killing[i][i] / qi(2)).collect();
        let weight_gram: Vec<Vec<Rational>> = (0..r)
            .map(|i| (0..r).map(|j| &cartan_inv[i][j] * &half_len[j]).collect())
            .collect();
        let fundamental_weights: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                let dim = simple[0].len();
                let mut v = vec![Rational::zero(); dim];
                for (k, root) in simple.iter().enumerate() {
                    for (x, y) in v.iter_mut().zip(root) {
                        *x += &cartan_inv[i][k] * y;
                    }
                }
                v
            })
            .collect();
        // x_i is the Killing dual of ω_i / d_i, so that α_j(x_i) = δ_ij.
        let dual_basis: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                fundamental_weights[i]
                    .iter()
                    .map(|x| x / &half_len[i])
                    .collect()
            })
            .collect();
        let mut rho = vec![Rational::zero(); r];
        for root in &positive_roots {
            for (x, &c) in rho.iter_mut().zip(root) {
                *x += q(c, 2);
            }
        }
        Ok(RootSystem {
            kind,
            rank,
            simple_roots: simple,
            eps_scale,
            cartan,
            cartan_inv,
            positive_roots,
            killing,
            weight_gram,
            fundamental_weights,
            highest_root,
            dual_basis,
            rho,
        })
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Short label such as `C3`.
    pub fn label(&self) -> String {
        match self.kind {
            CartanType::G2 | CartanType::F4 => format!("{}{}", self.kind, self.rank),
            _ => format!("{}{}", self.kind, self.rank),
        }
    }

    /// `A[i][j] = <α_i, α_j^∨>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inverse(&self) -> &[Vec<Rational>] {
        &self.cartan_inv
    }

    /// Simple roots in the ε-basis.
    pub fn simple_roots(&self) -> &[Vec<Rational>] {
        &self.simple_roots
    }

    /// Positive roots in simple-root coordinates, canonical order.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Gram matrix of the simple roots under the normalised Killing form.
    pub fn killing(&self) -> &[Vec<Rational>] {
        &self.killing
    }

    /// Gram matrix of the fundamental weights.
    pub fn weight_gram(&self) -> &[Vec<Rational>] {
        &self.weight_gram
    }

    /// Factor turning the standard ε dot product into the normalised form.
    pub fn eps_scale(&self) -> &Rational {
        &self.eps_scale
    }

    pub fn fundamental_weights_eps(&self) -> &[Vec<Rational>] {
        &self.fundamental_weights
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.highest_root
    }

    /// Dual basis `x_1..x_r` of `h`, written through the Killing isomorphism
    /// as ε-vectors.
    pub fn dual_basis_eps(&self) -> &[Vec<Rational>] {
        &self.dual_basis
    }

    /// Half-sum of positive roots in simple-root coordinates.
    pub fn rho(&self) -> &[Rational] {
        &self.rho
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_roots[0].len()
    }

    /// Index of a positive root given in simple coordinates.
    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == root)
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        if v.iter().all(|&x| x <= 0) {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            self.root_index(&neg).is_some()
        } else {
            self.root_index(v).is_some()
        }
    }

    pub fn simple_to_fund(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rank)
            .map(|k| {
                v.iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (j, c)| acc + c * qi(self.cartan[j][k]))
            })
            .collect()
    }

    pub fn fund_to_simple(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rank)
            .map(|k| {
                v.iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (i, c)| acc + c * &self.cartan_inv[i][k])
            })
            .collect()
    }

    pub fn simple_to_eps(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient_dim()];
        for (c, root) in v.iter().zip(&self.simple_roots) {
            for (x, y) in out.iter_mut().zip(root) {
                *x += c * y;
            }
        }
        out
    }

    pub fn fund_to_eps(&self, v: &[Rational]) -> Vec<Rational> {
        self.simple_to_eps(&self.fund_to_simple(v))
    }

    /// Fundamental-weight coordinates of an ε-vector lying in the span of
    /// the roots: `c_i = <v, α_i^∨>`.
    pub fn eps_to_fund(&self, v: &[Rational]) -> Vec<Rational> {
        self.simple_roots
            .iter()
            .map(|a| qi(2) * dot(v, a) / dot(a, a))
            .collect()
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::usage(format!(
                "vector of length {} used with a rank-{} root system",
                v.len(),
                self.rank
            )));
        }
        Ok(())
    }

    fn as_simple(&self, v: Vector<'_>) -> Result<Vec<Rational>> {
        match v {
            Vector::Weight(w) => {
                self.check_len(w)?;
                Ok(self.fund_to_simple(w))
            }
            Vector::Root(r) => {
                self.check_len(r)?;
                Ok(r.to_vec())
            }
        }
    }

    /// The normalised Killing pairing of two vectors of `h*`.
    pub fn killing_pairing(&self, a: Vector<'_>, b: Vector<'_>) -> Result<Rational> {
        let a = self.as_simple(a)?;
        let b = self.as_simple(b)?;
        Ok(self.pair_simple(&a, &b))
    }

    /// Pairing of two simple-coordinate vectors (no length checks).
    pub fn pair_simple(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc += x * y * &self.killing[i][j];
                }
            }
        }
        acc
    }

    /// Pairing of two fundamental-coordinate vectors.
    pub fn pair_weights(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc += x * y * &self.weight_gram[i][j];
                }
            }
        }
        acc
    }

    /// Integer coroot coordinates of a root: `c_k = <ω_k, β^∨>`.
    pub fn coroot_coords(&self, root: &[i64]) -> Vec<i64> {
        let rq: Vec<Rational> = root.iter().map(|&x| qi(x)).collect();
        let norm = self.pair_simple(&rq, &rq);
        (0..self.rank)
            .map(|k| {
                let c = qi(root[k]) * &self.killing[k][k] / &norm;
                crate::arith::to_i64(&c).expect("coroot coordinates are integral")
            })
            .collect()
    }

    /// Serialisable snapshot of the data.
    pub fn to_doc(&self) -> RootSystemDoc {
        let s = |v: &[Rational]| v.iter().map(fmt_q).collect::<Vec<_>>();
        RootSystemDoc {
            version: ROOTSYS_SCHEMA_VERSION,
            kind: self.kind,
            rank: self.rank,
            simple_roots: self.simple_roots.iter().map(|v| s(v)).collect(),
            positive_roots: self.positive_roots.clone(),
            cartan_matrix: self.cartan.clone(),
            fundamental_weights: self.fundamental_weights.iter().map(|v| s(v)).collect(),
            killing: self.killing.iter().map(|v| s(v)).collect(),
            highest_root: self.highest_root.clone(),
            dual_basis: self.dual_basis.iter().map(|v| s(v)).collect(),
            rho: s(&self.rho),
        }
    }
}

fn combine(coeffs: &[i64], vecs: &[Vec<Rational>]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); vecs[0].len()];
    for (&c, v) in coeffs.iter().zip(vecs) {
        for (x, y) in out.iter_mut().zip(v) {
            *x += qi(c) * y;
        }
    }
    out
}

/// Positive roots (simple coordinates) by closure of the simple roots under
/// simple reflections, in canonical order.
fn reflection_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push(e);
    }
    while let Some(beta) = queue.pop() {
        for i in 0..r {
            let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
            let mut img = beta.clone();
            img[i] -= pairing;
            if img.iter().all(|&x| x >= 0) && img.iter().any(|&x| x > 0) && seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    roots
}

/// Number of positive roots of a root system, from the classification.
pub fn expected_positive_roots(kind: CartanType, rank: usize) -> usize {
    let r = rank;
    match kind {
        CartanType::A => r * (r + 1) / 2,
        CartanType::B | CartanType::C => r * r,
        CartanType::D => r * (r - 1),
        CartanType::G2 => 6,
        CartanType::F4 => 24,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RootSystemDoc {
    pub version: u32,
    pub kind: CartanType,
    pub rank: usize,
    pub simple_roots: Vec<Vec<String>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub fundamental_weights: Vec<Vec<String>>,
    pub killing: Vec<Vec<String>>,
    pub highest_root: Vec<i64>,
    pub dual_basis: Vec<Vec<String>>,
    pub rho: Vec<String>,
}

// ---------------------------------------------------------------------------
// Embeddings

/// The embedding families handled by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EmbeddingCase {
    /// First factor `Sp(2s)` of `Sp(2s) x Sp(2(r-s)) ⊆ Sp(2r)`.
    CInC { r: usize, s: usize },
    /// `SO(2s+1) ⊆ SO(2r+1)` through iterated diagram-automorphism folds.
    BInB { r: usize, s: usize },
    /// `SO(2r-3) ⊆ SO(2r)` through `D_{r-1}`.
    DChain { r: usize },
    /// `SL(2) ⊆ G2` along the highest root.
    Sl2InG2,
    /// `G2 ⊆ B4 ⊆ F4` via the triality fold of `D4`.
    G2InF4,
    /// A root system inside itself.
    Identity { kind: CartanType, rank: usize },
}

impl FromStr for EmbeddingCase {
    type Err = Error;

    /// Accepts `c-in-c`, `b-in-b`, `d-chain`, `sl2-in-g2`, `g2-in-f4`; the
    /// ranks are filled in with [`EmbeddingCase::with_ranks`].
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c-in-c" | "cinc" => Ok(EmbeddingCase::CInC { r: 0, s: 0 }),
            "b-in-b" | "binb" => Ok(EmbeddingCase::BInB { r: 0, s: 0 }),
            "d-chain" | "dchain" => Ok(EmbeddingCase::DChain { r: 0 }),
            "sl2-in-g2" => Ok(EmbeddingCase::Sl2InG2),
            "g2-in-f4" => Ok(EmbeddingCase::G2InF4),
            other => Err(Error::config(format!("unknown embedding case {other:?}"))),
        }
    }
}

impl EmbeddingCase {
    pub fn with_ranks(self, r: usize, s: usize) -> Self {
        match self {
            EmbeddingCase::CInC { .. } => EmbeddingCase::CInC { r, s },
            EmbeddingCase::BInB { .. } => EmbeddingCase::BInB { r, s },
            EmbeddingCase::DChain { .. } => EmbeddingCase::DChain { r },
            other => other,
        }
    }

    pub fn name(&self) -> String {
        match self {
            EmbeddingCase::CInC { r, s } => format!("c-in-c(r={r},s={s})"),
            EmbeddingCase::BInB { r, s } => format!("b-in-b(r={r},s={s})"),
            EmbeddingCase::DChain { r } => format!("d-chain(r={r})"),
            EmbeddingCase::Sl2InG2 => "sl2-in-g2".to_string(),
            EmbeddingCase::G2InF4 => "g2-in-f4".to_string(),
            EmbeddingCase::Identity { kind, rank } => format!("identity({kind}{rank})"),
        }
    }
}

/// Image of one simple root of the subsystem.
///
/// `orbit` lists mutually orthogonal positive roots of the ambient system;
/// `root` is their average. For an ordinary sub-root-system the orbit is a
/// single root; for a diagram-automorphism fold the orbit is the
/// automorphism orbit and `root` is the restriction of any member to the
/// fixed Cartan subalgebra. The image of the simple reflection is the
/// product of the reflections in the orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleImage {
    pub root: Vec<Rational>,
    pub orbit: Vec<Vec<i64>>,
}

#[derive(Debug, Clone)]
pub struct SubsystemEmbedding {
    pub case: EmbeddingCase,
    pub ambient: RootSystem,
    pub sub: RootSystem,
    pub images: Vec<SimpleImage>,
    /// Simple roots of the remaining factor of the centraliser, when the
    /// family has one.
    pub complement: Vec<Vec<i64>>,
    /// Global factor between the image Gram matrix and the sub Gram matrix.
    pub scale: Rational,
    /// Matched maximal parabolics `(q, p)`: sub index `q` restricts from
    /// ambient index `p` (both 1-based).
    pub matched: Vec<(usize, usize)>,
}

impl SubsystemEmbedding {
    /// Embedding given by images of simple roots that are themselves roots.
    pub fn linear(
        case: EmbeddingCase,
        ambient: RootSystem,
        sub: RootSystem,
        images: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let images = images
            .into_iter()
            .map(|v| SimpleImage {
                root: v.iter().map(|&x| qi(x)).collect(),
                orbit: vec![v],
            })
            .collect();
        Self::finish(case, ambient, sub, images)
    }

    /// Fixed subsystem of a diagram automorphism with the given orbits of
    /// ambient simple-root indices (0-based).
    pub fn fold(
        case: EmbeddingCase,
        ambient: RootSystem,
        sub: RootSystem,
        orbits: &[Vec<usize>],
    ) -> Result<Self> {
        let r = ambient.rank();
        let images = orbits
            .iter()
            .map(|orb| {
                let members: Vec<Vec<i64>> = orb
                    .iter()
                    .map(|&i| (0..r).map(|j| i64::from(i == j)).collect())
                    .collect();
                let n = qi(orb.len() as i64);
                let root = (0..r)
                    .map(|j| qi(orb.iter().filter(|&&i| i == j).count() as i64) / &n)
                    .collect();
                SimpleImage { root, orbit: members }
            })
            .collect();
        Self::finish(case, ambient, sub, images)
    }

    /// `inner: sub -> mid` followed by `outer: mid -> ambient`.
    pub fn compose(case: EmbeddingCase, inner: &Self, outer: &Self) -> Result<Self> {
        if inner.ambient != outer.sub {
            return Err(Error::config("composed embeddings do not match"));
        }
        let map = |v: &[Rational]| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); outer.ambient.rank()];
            for (c, img) in v.iter().zip(&outer.images) {
                for (x, y) in out.iter_mut().zip(&img.root) {
                    *x += c * y;
                }
            }
            out
        };
        let mut images = Vec::new();
        for img in &inner.images {
            let root = map(&img.root);
            let mut orbit = Vec::new();
            for member in &img.orbit {
                let mq: Vec<Rational> = member.iter().map(|&x| qi(x)).collect();
                let m = map(&mq);
                let ints: Option<Vec<i64>> = m.iter().map(crate::arith::to_i64).collect();
                match ints {
                    Some(v) if outer.ambient.root_index(&v).is_some() => orbit.push(v),
                    _ => {
                        return Err(Error::config(
                            "composition maps an orbit member outside the ambient roots",
                        ))
                    }
                }
            }
            images.push(SimpleImage { root, orbit });
        }
        Self::finish(case, outer.ambient.clone(), inner.sub.clone(), images)
    }

    fn finish(
        case: EmbeddingCase,
        ambient: RootSystem,
        sub: RootSystem,
        images: Vec<SimpleImage>,
    ) -> Result<Self> {
        if images.len() != sub.rank() {
            return Err(Error::config("one image per simple root is required"));
        }
        let mut e = SubsystemEmbedding {
            case,
            ambient,
            sub,
            images,
            complement: Vec::new(),
            scale: Rational::one(),
            matched: Vec::new(),
        };
        e.scale = e.validate()?;
        Ok(e)
    }

    /// Checks the orbit data and the Gram matrix; returns the global scale.
    pub fn validate(&self) -> Result<Rational> {
        let amb = &self.ambient;
        for img in &self.images {
            for m in &img.orbit {
                if amb.root_index(m).is_none() {
                    return Err(Error::config(format!("{m:?} is not a positive root")));
                }
            }
            for (a, m) in img.orbit.iter().enumerate() {
                for n in &img.orbit[a + 1..] {
                    let mq: Vec<Rational> = m.iter().map(|&x| qi(x)).collect();
                    let nq: Vec<Rational> = n.iter().map(|&x| qi(x)).collect();
                    if !amb.pair_simple(&mq, &nq).is_zero() {
                        return Err(Error::config("fold orbit members must be orthogonal"));
                    }
                }
            }
            let len = qi(img.orbit.len() as i64);
            for j in 0..amb.rank() {
                let avg = qi(img.orbit.iter().map(|m| m[j]).sum()) / &len;
                if avg != img.root[j] {
                    return Err(Error::config("image root is not the orbit average"));
                }
            }
        }
        let k = self.sub.rank();
        let gram: Vec<Vec<Rational>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| amb.pair_simple(&self.images[i].root, &self.images[j].root))
                    .collect()
            })
            .collect();
        let scale = &gram[0][0] / &self.sub.killing()[0][0];
        if !scale.is_positive() {
            return Err(Error::config("non-positive Gram scale"));
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if *g != &scale * &self.sub.killing()[i][j] {
                    return Err(Error::config(format!(
                        "image Gram matrix does not match {} at ({i},{j})",
                        self.sub.label()
                    )));
                }
            }
        }
        Ok(scale)
    }

    pub fn is_isometric(&self) -> bool {
        self.scale.is_one()
    }

    /// Ambient simple coordinates of a sub vector given in sub simple
    /// coordinates.
    pub fn map_simple(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient.rank()];
        for (c, img) in v.iter().zip(&self.images) {
            for (x, y) in out.iter_mut().zip(&img.root) {
                *x += c * y;
            }
        }
        out
    }

    /// Restriction of an ambient weight to the sub Cartan subalgebra: the
    /// `i`-th coordinate is `2<λ, β_i>/<β_i, β_i>`.
    pub fn restrict_weight(&self, lambda: &Weight) -> Result<Weight> {
        if lambda.rank() != self.ambient.rank() {
            return Err(Error::usage("weight is not over the ambient root system"));
        }
        let ls = self.ambient.fund_to_simple(&lambda.0);
        Ok(Weight(
            self.images
                .iter()
                .map(|img| {
                    let num = self.ambient.pair_simple(&ls, &img.root);
                    let den = self.ambient.pair_simple(&img.root, &img.root);
                    qi(2) * num / den
                })
                .collect(),
        ))
    }

    /// The sub weight viewed as an element of the ambient `h*`.
    pub fn include_weight(&self, nu: &Weight) -> Result<Weight> {
        if nu.rank() != self.sub.rank() {
            return Err(Error::usage("weight is not over the sub root system"));
        }
        let s = self.sub.fund_to_simple(&nu.0);
        Ok(Weight(self.ambient.simple_to_fund(&self.map_simple(&s))))
    }

    /// Checks that `(q, p)` is a compatible pair of maximal parabolics:
    /// Levi images avoid `α_p`, the excluded image involves it.
    pub fn check_matching(&self, q: usize, p: usize) -> Result<()> {
        if q == 0 || q > self.sub.rank() || p == 0 || p > self.ambient.rank() {
            return Err(Error::usage(format!("parabolic pair ({q},{p}) out of range")));
        }
        for (j, img) in self.images.iter().enumerate() {
            let c = &img.root[p - 1];
            if j + 1 == q && c.is_zero() {
                return Err(Error::usage(format!(
                    "excluded sub root {q} does not involve ambient root {p}"
                )));
            }
            if j + 1 != q && !c.is_zero() {
                return Err(Error::usage(format!(
                    "Levi sub root {} involves ambient root {p}",
                    j + 1
                )));
            }
        }
        Ok(())
    }

    /// Builds one of the embedding families.
    pub fn build(case: EmbeddingCase) -> Result<Self> {
        use CartanType::*;
        let mut e = match case {
            EmbeddingCase::CInC { r, s } => {
                if s == 0 || s >= r {
                    return Err(Error::config(format!("c-in-c needs 1 <= s < r, got r={r}, s={s}")));
                }
                let amb = RootSystem::build(C, r)?;
                let sub = RootSystem::build(C, s)?;
                let mut images: Vec<Vec<i64>> = (0..s - 1)
                    .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
                    .collect();
                images.push(
                    (0..r)
                        .map(|j| match j {
                            j if j + 1 < s => 0,
                            j if j + 1 == r => 1,
                            _ => 2,
                        })
                        .collect(),
                );
                let mut e = Self::linear(case, amb, sub, images)?;
                e.complement = (s..r)
                    .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
                    .collect();
                e.matched = (1..=s).map(|k| (k, k)).collect();
                e
            }
            EmbeddingCase::BInB { r, s } => {
                if s == 0 || s >= r {
                    return Err(Error::config(format!("b-in-b needs 1 <= s < r, got r={r}, s={s}")));
                }
                let mut e = b_step(r)?;
                for m in (s + 1..r).rev() {
                    e = Self::compose(case, &b_step(m)?, &e)?;
                }
                e.case = case;
                e.matched = (1..=s).map(|k| (k, k)).collect();
                e
            }
            EmbeddingCase::DChain { r } => {
                if r < 4 {
                    return Err(Error::config("d-chain needs r >= 4"));
                }
                // B_{r-2} is folded out of D_{r-1}, which sits in D_r on the
                // first r-1 coordinates.
                let dr = RootSystem::build(D, r)?;
                let dr1 = RootSystem::build(D, r - 1)?;
                let mut images: Vec<Vec<i64>> = (0..r - 2)
                    .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
                    .collect();
                let mut last = vec![0; r];
                last[r - 3] = 1;
                last[r - 2] = 1;
                last[r - 1] = 1;
                images.push(last);
                let outer = Self::linear(case, dr, dr1, images)?;
                let mut e = Self::compose(case, &d_fold(r - 1)?, &outer)?;
                e.matched = (1..=r - 2).map(|k| (k, k)).collect();
                e
            }
            EmbeddingCase::Sl2InG2 => {
                let amb = RootSystem::build(G2, 2)?;
                let sub = RootSystem::build(A, 1)?;
                let mut e = Self::linear(case, amb, sub, vec![vec![3, 2]])?;
                e.complement = vec![vec![1, 0]];
                e.matched = vec![(1, 2)];
                e
            }
            EmbeddingCase::G2InF4 => {
                let f4 = RootSystem::build(F4, 4)?;
                let b4 = RootSystem::build(B, 4)?;
                let d4 = RootSystem::build(D, 4)?;
                let g2 = RootSystem::build(G2, 2)?;
                let b4_in_f4 = Self::linear(
                    case,
                    f4,
                    b4.clone(),
                    vec![vec![0, 1, 2, 2], vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]],
                )?;
                let d4_in_b4 = Self::linear(
                    case,
                    b4,
                    d4.clone(),
                    vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 1, 2]],
                )?;
                let g2_in_d4 = Self::fold(case, d4, g2, &[vec![0, 2, 3], vec![1]])?;
                let d4_in_f4 = Self::compose(case, &d4_in_b4, &b4_in_f4)?;
                let mut e = Self::compose(case, &g2_in_d4, &d4_in_f4)?;
                e.matched = vec![(1, 4), (2, 1)];
                e
            }
            EmbeddingCase::Identity { kind, rank } => {
                let rs = RootSystem::build(kind, rank)?;
                let images = (0..rank)
                    .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
                    .collect();
                let mut e = Self::linear(case, rs.clone(), rs, images)?;
                e.matched = (1..=rank).map(|k| (k, k)).collect();
                e
            }
        };
        e.case = case;
        for &(q, p) in &e.matched.clone() {
            e.check_matching(q, p)?;
        }
        Ok(e)
    }

    pub fn to_doc(&self) -> EmbeddingDoc {
        EmbeddingDoc {
            version: ROOTSYS_SCHEMA_VERSION,
            case: self.case.name(),
            ambient: self.ambient.to_doc(),
            sub: self.sub.to_doc(),
            simple_images: self
                .images
                .iter()
                .map(|i| ImageDoc {
                    root: i.root.iter().map(fmt_q).collect(),
                    orbit: i.orbit.clone(),
                })
                .collect(),
            complement: self.complement.clone(),
            scale: fmt_q(&self.scale),
            matched_parabolics: self.matched.clone(),
        }
    }
}

/// `D_m` folded by its diagram automorphism: `B_{m-1} ⊆ D_m`.
fn d_fold(m: usize) -> Result<SubsystemEmbedding> {
    let amb = RootSystem::build(CartanType::D, m)?;
    let sub = RootSystem::build(CartanType::B, m - 1)?;
    let mut orbits: Vec<Vec<usize>> = (0..m - 2).map(|i| vec![i]).collect();
    orbits.push(vec![m - 2, m - 1]);
    SubsystemEmbedding::fold(EmbeddingCase::BInB { r: m, s: m - 1 }, amb, sub, &orbits)
}

/// One step `B_{m-1} ⊆ B_m`, through `D_m` when `m >= 3`.
fn b_step(m: usize) -> Result<SubsystemEmbedding> {
    let case = EmbeddingCase::BInB { r: m, s: m - 1 };
    if m < 2 {
        return Err(Error::config("b-in-b needs r >= 2"));
    }
    if m == 2 {
        let amb = RootSystem::build(CartanType::B, 2)?;
        let sub = RootSystem::build(CartanType::B, 1)?;
        let image = SimpleImage {
            root: vec![qi(1), qi(1)],
            orbit: vec![vec![1, 0], vec![1, 2]],
        };
        return SubsystemEmbedding::finish(case, amb, sub, vec![image]);
    }
    let bm = RootSystem::build(CartanType::B, m)?;
    let dm = RootSystem::build(CartanType::D, m)?;
    let mut images: Vec<Vec<i64>> = (0..m - 1)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut last = vec![0; m];
    last[m - 2] = 1;
    last[m - 1] = 2;
    images.push(last);
    let d_in_b = SubsystemEmbedding::linear(case, bm, dm, images)?;
    SubsystemEmbedding::compose(case, &d_fold(m)?, &d_in_b)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ImageDoc {
    pub root: Vec<String>,
    pub orbit: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EmbeddingDoc {
    pub version: u32,
    pub case: String,
    pub ambient: RootSystemDoc,
    pub sub: RootSystemDoc,
    pub simple_images: Vec<ImageDoc>,
    pub complement: Vec<Vec<i64>>,
    pub scale: String,
    pub matched_parabolics: Vec<(usize, usize)>,
}
