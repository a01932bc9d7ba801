//! Representation-theoretic oracle: Freudenthal multiplicities, tensor
//! products by Brauer–Klimyk, and invariant dimensions.
//!
//! Weights are integer vectors in fundamental coordinates. The invariant
//! form is the weight Gram matrix scaled to integers.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::arith::to_i64;
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::weyl::{generate_weyl_group, longest_element, DEFAULT_GROUP_CAP};

pub const DEFAULT_DIM_CAP: u128 = 1_000_000;
pub const DEFAULT_NMAX: usize = 6;

/// Dominant weights of `V_λ` with their multiplicities.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    pub group: String,
    pub highest: Vec<i64>,
    pub mults: BTreeMap<Vec<i64>, u64>,
    pub dim: u128,
}

impl CharacterTable {
    /// Multiplicity of a dominant weight, zero if absent.
    pub fn mult(&self, mu: &[i64]) -> u64 {
        self.mults.get(mu).copied().unwrap_or(0)
    }
}

pub struct Oracle {
    rs: RootSystem,
    /// Positive roots in fundamental coordinates.
    roots: Vec<Vec<i64>>,
    /// Positive roots as coroot pairings: `<ω_k, β^∨>`.
    coroots: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    /// `(word length parity, matrix)` for every Weyl group element.
    group: Vec<(bool, Vec<Vec<i64>>)>,
    w0: Vec<Vec<i64>>,
    cap: u128,
    tables: RwLock<HashMap<Vec<i64>, Arc<CharacterTable>>>,
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

impl Oracle {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        Self::with_cap(rs, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(rs: &RootSystem, cap: u128) -> Result<Self> {
        let r = rs.rank();
        let a = rs.cartan();
        let roots = rs
            .positive_roots()
            .iter()
            .map(|b| (0..r).map(|k| (0..r).map(|j| b[j] * a[j][k]).sum()).collect())
            .collect();
        let coroots = rs.positive_roots().iter().map(|b| rs.coroot_coords(b)).collect();
        let mut den = num_bigint::BigInt::from(1);
        for row in rs.weight_gram() {
            for x in row {
                den = num_integer::Integer::lcm(&den, x.denom());
            }
        }
        let den = crate::arith::Rational::from_integer(den);
        let gram = rs
            .weight_gram()
            .iter()
            .map(|row| row.iter().map(|x| to_i64(&(x * &den)).expect("small form")).collect())
            .collect();
        let group = generate_weyl_group(rs, DEFAULT_GROUP_CAP)?
            .into_iter()
            .map(|w| (w.length() % 2 == 1, w.action().to_vec()))
            .collect();
        let w0 = longest_element(rs).action().to_vec();
        Ok(Oracle { rs: rs.clone(), roots, coroots, gram, group, w0, cap, tables: RwLock::new(HashMap::new()) })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    fn form(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut acc = 0i128;
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                acc += (*x as i128) * (*y as i128) * (self.gram[i][j] as i128);
            }
        }
        acc
    }

    fn check(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rs.rank() {
            return Err(Error::usage(format!("weight needs {} coordinates", self.rs.rank())));
        }
        if lambda.iter().any(|&x| x < 0) {
            return Err(Error::usage(format!("weight {lambda:?} is not dominant")));
        }
        Ok(())
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, lambda: &[i64]) -> u128 {
        let mut num = num_bigint::BigInt::from(1);
        let mut den = num_bigint::BigInt::from(1);
        for c in &self.coroots {
            let rho: i64 = c.iter().sum();
            let lr: i64 = rho + c.iter().zip(lambda).map(|(a, b)| a * b).sum::<i64>();
            num *= lr;
            den *= rho;
        }
        let q = num / den;
        num_traits::ToPrimitive::to_u128(&q).unwrap_or(u128::MAX)
    }

    /// Dominant representative of `v` and the parity of the reflections
    /// used, or `None` when `v` is fixed by a reflection (singular).
    pub fn to_dominant(&self, v: &[i64]) -> (Vec<i64>, bool) {
        let a = self.rs.cartan();
        let mut v = v.to_vec();
        let mut odd = false;
        while let Some(i) = v.iter().position(|&x| x < 0) {
            let c = v[i];
            for (k, x) in v.iter_mut().enumerate() {
                *x -= c * a[i][k];
            }
            odd = !odd;
        }
        (v, odd)
    }

    fn orbit_size(&self, mu: &[i64]) -> u128 {
        let a = self.rs.cartan();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([mu.to_vec()]);
        seen.insert(mu.to_vec());
        while let Some(v) = queue.pop_front() {
            for (i, &c) in v.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let w: Vec<i64> = v.iter().enumerate().map(|(k, x)| x - c * a[i][k]).collect();
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() as u128
    }

    /// Freudenthal's recursion over the dominant weights below `λ`.
    pub fn weight_multiplicities(&self, lambda: &[i64]) -> Result<Arc<CharacterTable>> {
        self.check(lambda)?;
        if let Some(t) = self.tables.read().expect("oracle cache poisoned").get(lambda) {
            return Ok(t.clone());
        }
        let dim = self.weyl_dimension(lambda);
        if dim > self.cap {
            return Err(Error::Resource { what: format!("V{lambda:?} of {}", self.rs.label()), needed: dim, cap: self.cap });
        }
        // dominant weights below λ, with depth = height of λ - μ
        let heights: Vec<i64> = self.rs.positive_roots().iter().map(|b| b.iter().sum()).collect();
        let mut depth: HashMap<Vec<i64>, i64> = HashMap::from([(lambda.to_vec(), 0)]);
        let mut queue = VecDeque::from([lambda.to_vec()]);
        while let Some(v) = queue.pop_front() {
            let d = depth[&v];
            for (root, h) in self.roots.iter().zip(&heights) {
                let w: Vec<i64> = v.iter().zip(root).map(|(x, y)| x - y).collect();
                if w.iter().all(|&x| x >= 0) && !depth.contains_key(&w) {
                    depth.insert(w.clone(), d + h);
                    queue.push_back(w);
                }
            }
        }
        let mut order: Vec<(i64, Vec<i64>)> = depth.into_iter().map(|(k, d)| (d, k)).collect();
        order.sort();

        let rho = vec![1i64; lambda.len()];
        let shift = |v: &[i64]| -> Vec<i64> { v.iter().zip(&rho).map(|(a, b)| a + b).collect() };
        let top = self.form(&shift(lambda), &shift(lambda));
        let mut mults: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for (d, mu) in order {
            if d == 0 {
                mults.insert(mu, 1);
                continue;
            }
            let mut acc: i128 = 0;
            for root in &self.roots {
                let mut k = 1;
                loop {
                    let v: Vec<i64> = mu.iter().zip(root).map(|(x, y)| x + k * y).collect();
                    let (dom, _) = self.to_dominant(&v);
                    let m = mults.get(&dom).copied().unwrap_or(0);
                    if m == 0 {
                        break;
                    }
                    acc += m as i128 * self.form(&v, root);
                    k += 1;
                }
            }
            let den = top - self.form(&shift(&mu), &shift(&mu));
            let num = 2 * acc;
            if den <= 0 || num % den != 0 {
                return Err(Error::Verification(format!("Freudenthal step at {mu:?} is not integral")));
            }
            let m = (num / den) as u64;
            if m > 0 {
                mults.insert(mu, m);
            }
        }
        let total: u128 = mults.iter().map(|(mu, &m)| m as u128 * self.orbit_size(mu)).sum();
        if total != dim {
            return Err(Error::Verification(format!(
                "character of {lambda:?} has dimension {total}, Weyl formula gives {dim}"
            )));
        }
        let table = Arc::new(CharacterTable { group: self.rs.label(), highest: lambda.to_vec(), mults, dim });
        self.tables.write().expect("oracle cache poisoned").insert(lambda.to_vec(), table.clone());
        Ok(table)
    }

    /// Multiplicity of an arbitrary weight in `V_λ`.
    pub fn multiplicity(&self, lambda: &[i64], mu: &[i64]) -> Result<u64> {
        let t = self.weight_multiplicities(lambda)?;
        Ok(t.mult(&self.to_dominant(mu).0))
    }

    /// Every weight of `V_λ` with its multiplicity.
    pub fn all_weights(&self, lambda: &[i64]) -> Result<Vec<(Vec<i64>, u64)>> {
        let t = self.weight_multiplicities(lambda)?;
        let a = self.rs.cartan();
        let mut out = Vec::new();
        for (mu, &m) in &t.mults {
            let mut seen = HashSet::from([mu.clone()]);
            let mut queue = VecDeque::from([mu.clone()]);
            while let Some(v) = queue.pop_front() {
                for (i, &c) in v.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let w: Vec<i64> = v.iter().enumerate().map(|(k, x)| x - c * a[i][k]).collect();
                    if seen.insert(w.clone()) {
                        queue.push_back(w);
                    }
                }
            }
            out.extend(seen.into_iter().map(|w| (w, m)));
        }
        out.sort();
        Ok(out)
    }

    /// `V_λ ⊗ V_μ` as dominant highest weights with multiplicities,
    /// summing `±V_{w(λ+ν+ρ)-ρ}` over the weights `ν` of the smaller factor.
    pub fn tensor_decompose(&self, lambda: &[i64], mu: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
        self.check(lambda)?;
        self.check(mu)?;
        let (dl, dm) = (self.weyl_dimension(lambda), self.weyl_dimension(mu));
        let prod = dl.saturating_mul(dm);
        if prod > self.cap {
            return Err(Error::Resource { what: format!("V{lambda:?} ⊗ V{mu:?}"), needed: prod, cap: self.cap });
        }
        let (big, small) = if dl >= dm { (lambda, mu) } else { (mu, lambda) };
        let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (nu, m) in self.all_weights(small)? {
            let v: Vec<i64> = big.iter().zip(&nu).map(|(a, b)| a + b + 1).collect();
            let (dom, odd) = self.to_dominant(&v);
            if dom.contains(&0) {
                continue;
            }
            let hw: Vec<i64> = dom.iter().map(|x| x - 1).collect();
            *acc.entry(hw).or_insert(0) += if odd { -(m as i64) } else { m as i64 };
        }
        let mut out = BTreeMap::new();
        for (hw, c) in acc {
            if c < 0 {
                return Err(Error::Verification(format!("negative tensor multiplicity at {hw:?}")));
            }
            if c > 0 {
                out.insert(hw, c as u64);
            }
        }
        Ok(out)
    }

    /// Multiplicity of `V_γ` in `V_λ ⊗ V_μ` by the alternating sum over `W`.
    pub fn tensor_multiplicity(&self, lambda: &[i64], mu: &[i64], gamma: &[i64]) -> Result<u64> {
        self.check(lambda)?;
        self.check(mu)?;
        self.check(gamma)?;
        let gr: Vec<i64> = gamma.iter().map(|x| x + 1).collect();
        let mut acc: i128 = 0;
        for (odd, m) in &self.group {
            let wg = apply(m, &gr);
            let nu: Vec<i64> = wg.iter().zip(lambda).map(|(a, b)| a - b - 1).collect();
            let c = self.multiplicity(mu, &nu)? as i128;
            acc += if *odd { -c } else { c };
        }
        u64::try_from(acc).map_err(|_| Error::Verification("negative tensor multiplicity".into()))
    }

    /// `λ^* = -w_0 λ`.
    pub fn dual(&self, lambda: &[i64]) -> Vec<i64> {
        apply(&self.w0, lambda).into_iter().map(|x| -x).collect()
    }

    /// Dimension of the invariants in `V_{λ_1} ⊗ ⋯ ⊗ V_{λ_n}`.
    pub fn invariant_dim(&self, lambdas: &[Vec<i64>]) -> Result<u64> {
        for l in lambdas {
            self.check(l)?;
        }
        match lambdas.len() {
            0 => Ok(1),
            1 => Ok(u64::from(lambdas[0].iter().all(|&x| x == 0))),
            2 => Ok(u64::from(lambdas[1] == self.dual(&lambdas[0]))),
            n => {
                let target = self.dual(&lambdas[n - 1]);
                let mut parts: BTreeMap<Vec<i64>, u64> = BTreeMap::from([(lambdas[0].clone(), 1)]);
                for l in &lambdas[1..n - 2] {
                    let mut next = BTreeMap::new();
                    for (hw, c) in &parts {
                        for (k, d) in self.tensor_decompose(hw, l)? {
                            *next.entry(k).or_insert(0) += c * d;
                        }
                    }
                    parts = next;
                }
                let mut total = 0;
                for (hw, c) in &parts {
                    total += c * self.tensor_multiplicity(hw, &lambdas[n - 2], &target)?;
                }
                Ok(total)
            }
        }
    }

    /// Smallest `N ≤ nmax` with an invariant in `⊗ V_{Nλ_i}`.
    pub fn saturated_search(&self, lambdas: &[Vec<i64>], nmax: usize) -> Result<Option<usize>> {
        for n in 1..=nmax {
            let scaled: Vec<Vec<i64>> = lambdas.iter().map(|l| l.iter().map(|x| x * n as i64).collect()).collect();
            if self.invariant_dim(&scaled)? > 0 {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    fn oracle(k: CartanType, r: usize) -> Oracle {
        Oracle::new(&RootSystem::build(k, r).unwrap()).unwrap()
    }

    #[test]
    fn a1_strings() {
        let o = oracle(CartanType::A, 1);
        let t = o.weight_multiplicities(&[3]).unwrap();
        assert_eq!(t.mults, BTreeMap::from([(vec![3], 1), (vec![1], 1)]));
        assert_eq!(t.dim, 4);
        let all = o.all_weights(&[3]).unwrap();
        assert_eq!(all.iter().map(|x| x.0[0]).collect::<Vec<_>>(), vec![-3, -1, 1, 3]);
    }

    #[test]
    fn small_dimensions() {
        let c2 = oracle(CartanType::C, 2);
        let t = c2.weight_multiplicities(&[0, 1]).unwrap();
        assert_eq!(t.dim, 5);
        assert_eq!(t.mult(&[0, 0]), 1);
        assert_eq!(oracle(CartanType::G2, 2).weight_multiplicities(&[1, 0]).unwrap().dim, 7);
        // adjoint representations: zero weight has multiplicity = rank
        let f4 = oracle(CartanType::F4, 4);
        let adj = f4.weight_multiplicities(&[1, 0, 0, 0]).unwrap();
        assert_eq!(adj.dim, 52);
        assert_eq!(adj.mult(&[0, 0, 0, 0]), 4);
        let a3 = oracle(CartanType::A, 3);
        assert_eq!(a3.weight_multiplicities(&[1, 0, 1]).unwrap().mult(&[0, 0, 0]), 3);
    }

    #[test]
    fn clebsch_gordan() {
        let o = oracle(CartanType::A, 1);
        assert_eq!(o.tensor_decompose(&[1], &[1]).unwrap(), BTreeMap::from([(vec![0], 1), (vec![2], 1)]));
        for (a, b) in [(2, 5), (4, 4), (0, 3)] {
            let d = o.tensor_decompose(&[a], &[b]).unwrap();
            let expect: BTreeMap<Vec<i64>, u64> =
                ((a - b).abs()..=a + b).step_by(2).map(|c| (vec![c], 1)).collect();
            assert_eq!(d, expect);
        }
        assert_eq!(o.invariant_dim(&[vec![1], vec![1], vec![2]]).unwrap(), 1);
        assert_eq!(o.saturated_search(&[vec![1], vec![1], vec![2]], 6).unwrap(), Some(1));
        assert_eq!(o.saturated_search(&[vec![1], vec![1], vec![3]], 6).unwrap(), None);
        assert_eq!(o.invariant_dim(&[vec![0], vec![0], vec![0]]).unwrap(), 1);
    }

    #[test]
    fn c2_vector_square() {
        let o = oracle(CartanType::C, 2);
        let d = o.tensor_decompose(&[1, 0], &[1, 0]).unwrap();
        assert_eq!(d, BTreeMap::from([(vec![0, 0], 1), (vec![0, 1], 1), (vec![2, 0], 1)]));
    }

    #[test]
    fn decomposition_dimensions_and_symmetry() {
        for (k, r, pairs) in [
            (CartanType::C, 2, vec![([1, 1], [0, 2]), ([2, 0], [1, 1])]),
            (CartanType::G2, 2, vec![([1, 0], [1, 1]), ([0, 1], [2, 0])]),
            (CartanType::B, 2, vec![([1, 1], [1, 0])]),
        ] {
            let o = oracle(k, r);
            for (a, b) in pairs {
                let d = o.tensor_decompose(&a, &b).unwrap();
                let total: u128 = d.iter().map(|(hw, &c)| c as u128 * o.weyl_dimension(hw)).sum();
                assert_eq!(total, o.weyl_dimension(&a) * o.weyl_dimension(&b));
                assert_eq!(d, o.tensor_decompose(&b, &a).unwrap());
                for (hw, &c) in &d {
                    assert_eq!(o.tensor_multiplicity(&a, &b, hw).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn trivial_factor_and_duals() {
        let o = oracle(CartanType::A, 2);
        assert_eq!(o.tensor_decompose(&[2, 1], &[0, 0]).unwrap(), BTreeMap::from([(vec![2, 1], 1)]));
        assert_eq!(o.dual(&[2, 1]), vec![1, 2]);
        assert_eq!(o.invariant_dim(&[vec![2, 1], vec![1, 2]]).unwrap(), 1);
        // four-fold product exercises the iterated branch
        assert_eq!(o.invariant_dim(&[vec![1, 0], vec![1, 0], vec![1, 0], vec![0, 0]]).unwrap(), 1);
        let a1 = oracle(CartanType::A, 1);
        assert_eq!(a1.invariant_dim(&[vec![1], vec![1], vec![1], vec![1]]).unwrap(), 2);
    }

    #[test]
    fn caps_and_errors() {
        let o = Oracle::with_cap(&RootSystem::build(CartanType::A, 1).unwrap(), 10).unwrap();
        assert!(matches!(o.weight_multiplicities(&[20]), Err(Error::Resource { .. })));
        assert!(matches!(o.weight_multiplicities(&[-1]), Err(Error::Usage(_))));
    }
}
