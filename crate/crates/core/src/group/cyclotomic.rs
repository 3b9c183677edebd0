//! Exact arithmetic in the integral cyclotomic ring `Z[ζ_N]`.
//!
//! Elements are stored as integer combinations `Σ c_k ζ^k`, `0 ≤ k < N`, i.e.
//! in the group ring of `Z_N`. This representative is not unique; equality and
//! zero tests reduce modulo the cyclotomic polynomial `Φ_N`, after which the
//! coefficient vector over `1, ζ, …, ζ^{φ(N)-1}` is canonical.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Arc, Mutex, OnceLock};

use crate::C64;

/// `x^k mod Φ_N` for `k = 0..N`, each a vector of length `φ(N)`.
type ReductionTable = Arc<Vec<Vec<i64>>>;

fn reduction_table(order: u32) -> ReductionTable {
    static CACHE: OnceLock<Mutex<HashMap<u32, ReductionTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("reduction cache poisoned");
    guard
        .entry(order)
        .or_insert_with(|| Arc::new(build_reduction_table(order)))
        .clone()
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = exact_div(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact polynomial division");
    q
}

fn build_reduction_table(order: u32) -> Vec<Vec<i64>> {
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    let mut table = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..order {
        table.push(cur.clone());
        // multiply by x and reduce with x^deg = -Σ phi[i] x^i
        let top = cur[deg - 1];
        for i in (1..deg).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..deg {
                cur[i] -= top * phi[i];
            }
        }
    }
    table
}

/// Element of `Z[ζ_N]` with `ζ_N = exp(2πi/N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "root-of-unity order must be positive");
        Cyclotomic {
            order,
            coeffs: vec![0; order as usize],
        }
    }

    /// `c · ζ^k`.
    pub fn monomial(order: u32, k: u32, c: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[(k % order) as usize] = c;
        z
    }

    /// Wraps group-ring coefficients; `coeffs.len()` must equal `order`.
    pub fn from_coeffs(order: u32, coeffs: Vec<i64>) -> Self {
        assert_eq!(coeffs.len(), order as usize, "coefficient vector length must equal the order");
        Cyclotomic { order, coeffs }
    }

    pub fn root(order: u32, k: u32) -> Self {
        Self::monomial(order, k, 1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Group-ring coefficients of `1, ζ, …, ζ^{N-1}`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs of the representative.
    pub fn terms(&self) -> Vec<(u32, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k as u32, c))
            .collect()
    }

    pub fn add_monomial(&mut self, k: u32, c: i64) {
        self.coeffs[(k % self.order) as usize] += c;
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.order, other.order);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn scaled(&self, c: i64) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        let n = self.order;
        let mut out = Self::zero(n);
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                out.coeffs[((i + j) % n) as usize] += a * b;
            }
        }
        out
    }

    /// Canonical coordinates over `1, ζ, …, ζ^{φ(N)-1}`.
    pub fn reduced(&self) -> Vec<i64> {
        let table = reduction_table(self.order);
        let deg = table[0].len();
        let mut out = vec![0i64; deg];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                for (o, &t) in out.iter_mut().zip(&table[k]) {
                    *o += c * t;
                }
            }
        }
        out
    }

    /// Rewrites the representative in canonical reduced form.
    pub fn canonical(&self) -> Self {
        let mut coeffs = self.reduced();
        coeffs.resize(self.order as usize, 0);
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0) || self.reduced().iter().all(|&c| c == 0)
    }

    /// Equality as elements of `Z[ζ_N]`.
    pub fn exact_eq(&self, other: &Self) -> bool {
        assert_eq!(self.order, other.order);
        self.reduced() == other.reduced()
    }

    pub fn to_complex(&self) -> C64 {
        let n = f64::from(self.order);
        self.terms()
            .into_iter()
            .map(|(k, c)| C64::from_polar(c as f64, TAU * f64::from(k) / n))
            .sum()
    }

    /// Readable form such as `2*z^1 - z^3`, with `z = exp(2πi/N)`.
    pub fn render(&self) -> String {
        let terms = self.canonical().terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (k, c)) in terms.into_iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if idx == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            let mag = c.unsigned_abs();
            match (k, mag) {
                (0, m) => s.push_str(&m.to_string()),
                (k, 1) => s.push_str(&format!("z^{k}")),
                (k, m) => s.push_str(&format!("{m}*z^{k}")),
            }
        }
        s
    }
}
