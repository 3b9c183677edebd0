use serde::Serialize;

use crate::group::abelian::{FiniteAbelianGroup, GroupElement};
use crate::group::bicharacter::Bicharacter;
use crate::group::cyclotomic::Cyclotomic;
use crate::{Error, Result, C64};

/// `R = Σ c(g', h') g' ⊗ h'` in `CG ⊗ CG`, with each coefficient an exact
/// element of `Z[ζ_N]` divided by the common denominator `n²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    group: FiniteAbelianGroup,
    denominator: i64,
    numerators: Vec<Cyclotomic>,
}

/// One nonzero coefficient, in serializable form.
#[derive(Clone, Debug, Serialize)]
pub struct RCoefficient {
    pub left: GroupElement,
    pub right: GroupElement,
    /// Exact numerator in powers of `z = exp(2πi/N)`.
    pub numerator: String,
    pub denominator: i64,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuasitriangularReport {
    pub coproduct_left_ok: bool,
    pub coproduct_right_ok: bool,
    pub invertible: bool,
    pub commutes_with_coproduct: bool,
    pub qt_axioms_ok: bool,
    pub triangular: bool,
}

type Terms = Vec<(u32, i64)>;

impl RMatrix {
    /// `numerators[g' * n + h']` over `denominator`, indices in element order.
    pub fn from_parts(group: &FiniteAbelianGroup, numerators: Vec<Cyclotomic>, denominator: i64) -> Result<Self> {
        let n = group.order();
        if numerators.len() != n * n {
            return Err(Error::shape(format!("{} numerators for a group of order {n}", numerators.len())));
        }
        if denominator <= 0 {
            return Err(Error::arg("R-matrix denominator must be positive"));
        }
        if let Some(c) = numerators.iter().find(|c| c.order() != group.exponent()) {
            return Err(Error::arg(format!(
                "numerator over roots of order {} for group exponent {}",
                c.order(),
                group.exponent()
            )));
        }
        Ok(RMatrix {
            group: group.clone(),
            denominator,
            numerators: numerators.iter().map(Cyclotomic::canonical).collect(),
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn numerators(&self) -> &[Cyclotomic] {
        &self.numerators
    }

    pub fn numerator_at(&self, gi: usize, hi: usize) -> &Cyclotomic {
        &self.numerators[gi * self.group.order() + hi]
    }

    pub fn coefficient(&self, left: &GroupElement, right: &GroupElement) -> Result<C64> {
        let gi = self.group.index_of(left)?;
        let hi = self.group.index_of(right)?;
        Ok(self.numerator_at(gi, hi).to_complex() / self.denominator as f64)
    }

    /// Nonzero coefficients in element order.
    pub fn coefficient_list(&self) -> Vec<RCoefficient> {
        let n = self.group.order();
        let elems: Vec<GroupElement> = self.group.elements().collect();
        let mut out = Vec::new();
        for (k, c) in self.numerators.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = c.to_complex() / self.denominator as f64;
            out.push(RCoefficient {
                left: elems[k / n].clone(),
                right: elems[k % n].clone(),
                numerator: c.render(),
                denominator: self.denominator,
                re: z.re,
                im: z.im,
            });
        }
        out
    }

    fn term_lists(&self) -> Vec<Terms> {
        self.numerators.iter().map(Cyclotomic::terms).collect()
    }
}

/// `⟨g', g⟩` exponents over `ζ_N`, row `g'`, column `g`.
fn pairing_table(group: &FiniteAbelianGroup) -> Vec<u32> {
    let elems: Vec<GroupElement> = group.elements().collect();
    let mut out = Vec::with_capacity(elems.len() * elems.len());
    for gp in &elems {
        let chi = group.character_of(gp);
        for g in &elems {
            out.push(group.pairing_exponent(&chi, g));
        }
    }
    out
}

/// `R = (1/n²) Σ_{g,h,g',h'} θ(g,h) conj⟨g',g⟩ conj⟨h',h⟩ g' ⊗ h'`.
pub fn bicharacter_to_rmatrix(theta: &Bicharacter) -> RMatrix {
    let group = theta.group();
    let n = group.order();
    let big_n = group.exponent();
    let pair = pairing_table(group);
    let mut numerators = Vec::with_capacity(n * n);
    for gp in 0..n {
        for hp in 0..n {
            let mut acc = vec![0i64; big_n as usize];
            for g in 0..n {
                let a = big_n - pair[gp * n + g];
                for h in 0..n {
                    let k = theta.exponent_at(g, h) + a + (big_n - pair[hp * n + h]);
                    acc[(k % big_n) as usize] += 1;
                }
            }
            numerators.push(Cyclotomic::from_coeffs(big_n, acc));
        }
    }
    RMatrix::from_parts(group, numerators, (n * n) as i64).expect("well-formed by construction")
}

/// Multiplies term lists into a dense accumulator.
#[inline]
fn accumulate(acc: &mut [i64], a: &Terms, b: &Terms, big_n: u32) {
    for &(i, x) in a {
        for &(j, y) in b {
            acc[((i + j) % big_n) as usize] += x * y;
        }
    }
}

/// Tests `acc == scale · target` in `Z[ζ_N]` and clears `acc`.
fn take_and_compare(acc: &mut [i64], target: Option<&Terms>, scale: i64, big_n: u32) -> bool {
    if let Some(t) = target {
        for &(k, c) in t {
            acc[k as usize] -= scale * c;
        }
    }
    let zero = acc.iter().all(|&c| c == 0) || Cyclotomic::from_coeffs(big_n, acc.to_vec()).is_zero();
    acc.iter_mut().for_each(|c| *c = 0);
    zero
}

/// Sparse element of `CG ⊗ CG`: `(g * n + h, coefficient terms)`.
type Tensor2 = Vec<(usize, Terms)>;

fn tensor2_product(lhs: &Tensor2, rhs: &Tensor2, prod: &[usize], n: usize, big_n: u32) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; big_n as usize]; n * n];
    for (l, lt) in lhs {
        let (la, lb) = (l / n, l % n);
        for (r, rt) in rhs {
            let (ra, rb) = (r / n, r % n);
            let cell = prod[la * n + ra] * n + prod[lb * n + rb];
            accumulate(&mut out[cell], lt, rt, big_n);
        }
    }
    out
}

fn cells_equal(a: &[Vec<i64>], b: &[Vec<i64>], big_n: u32) -> bool {
    a.iter().zip(b).all(|(x, y)| {
        x == y || {
            let diff: Vec<i64> = x.iter().zip(y).map(|(p, q)| p - q).collect();
            Cyclotomic::from_coeffs(big_n, diff).is_zero()
        }
    })
}

/// Exact check of the quasitriangular axioms with `Δ(g) = g ⊗ g`.
pub fn check_quasitriangular(r: &RMatrix) -> QuasitriangularReport {
    let group = &r.group;
    let n = group.order();
    let big_n = group.exponent();
    let d = r.denominator;
    let prod = group.product_table();
    let c = r.term_lists();
    let cell = |a: usize, b: usize| &c[a * n + b];
    let mut acc = vec![vec![0i64; big_n as usize]; n];

    // (Δ ⊗ id)R = R13 R23: Σ_b c(x,b) c(y,z-b) = [x = y] D c(x,z)
    let mut coproduct_left_ok = true;
    'left: for x in 0..n {
        for y in 0..n {
            for b in 0..n {
                if cell(x, b).is_empty() {
                    continue;
                }
                for w in 0..n {
                    accumulate(&mut acc[prod[b * n + w]], cell(x, b), cell(y, w), big_n);
                }
            }
            for (z, a) in acc.iter_mut().enumerate() {
                let target = (x == y).then(|| cell(x, z));
                if !take_and_compare(a, target, d, big_n) {
                    coproduct_left_ok = false;
                    break 'left;
                }
            }
        }
    }

    // (id ⊗ Δ)R = R13 R12: Σ_a c(a,z) c(x-a,y) = [y = z] D c(x,y)
    let mut coproduct_right_ok = true;
    'right: for y in 0..n {
        for z in 0..n {
            for a in 0..n {
                if cell(a, z).is_empty() {
                    continue;
                }
                for a2 in 0..n {
                    accumulate(&mut acc[prod[a * n + a2]], cell(a, z), cell(a2, y), big_n);
                }
            }
            for (x, a) in acc.iter_mut().enumerate() {
                let target = (y == z).then(|| cell(x, y));
                if !take_and_compare(a, target, d, big_n) {
                    coproduct_right_ok = false;
                    break 'right;
                }
            }
        }
    }

    let invertible = line_values(r).iter().all(|v| !v.is_zero());

    let r_elem: Tensor2 = c
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.is_empty())
        .map(|(k, t)| (k, t.clone()))
        .collect();
    let mut commutes_with_coproduct = true;
    for x in 0..n {
        let delta: Tensor2 = vec![(x * n + x, vec![(0, 1)])];
        let lhs = tensor2_product(&r_elem, &delta, &prod, n, big_n);
        let rhs = tensor2_product(&delta, &r_elem, &prod, n, big_n);
        if !cells_equal(&lhs, &rhs, big_n) {
            commutes_with_coproduct = false;
            break;
        }
    }

    // R21 R = e ⊗ e, all over D²
    let r21: Tensor2 = r_elem.iter().map(|(k, t)| ((k % n) * n + k / n, t.clone())).collect();
    let product = tensor2_product(&r21, &r_elem, &prod, n, big_n);
    let mut unit = vec![vec![0i64; big_n as usize]; n * n];
    unit[0][0] = d * d;
    let triangular = cells_equal(&product, &unit, big_n);

    QuasitriangularReport {
        coproduct_left_ok,
        coproduct_right_ok,
        invertible,
        commutes_with_coproduct,
        qt_axioms_ok: coproduct_left_ok && coproduct_right_ok && invertible && commutes_with_coproduct,
        triangular,
    }
}

/// `D · R(g, h)`: the scalar by which `R` acts on the product of lines of
/// degrees `g` and `h`, row-major over element indices.
fn line_values(r: &RMatrix) -> Vec<Cyclotomic> {
    let group = &r.group;
    let n = group.order();
    let big_n = group.exponent();
    let pair = pairing_table(group);
    let c = r.term_lists();
    let mut out = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            let mut acc = vec![0i64; big_n as usize];
            for gp in 0..n {
                for hp in 0..n {
                    let shift = pair[gp * n + g] + pair[hp * n + h];
                    for &(k, v) in &c[gp * n + hp] {
                        acc[((k + shift) % big_n) as usize] += v;
                    }
                }
            }
            out.push(Cyclotomic::from_coeffs(big_n, acc));
        }
    }
    out
}

/// Recovers the bicharacter from the braiding `R` induces on graded lines.
///
/// Fails with a structure error when some line value is not a root of unity.
pub fn braiding_on_lines(r: &RMatrix) -> Result<Bicharacter> {
    let group = &r.group;
    let big_n = group.exponent();
    let mut table = Vec::with_capacity(group.order() * group.order());
    for v in line_values(r) {
        let k = (0..big_n)
            .find(|&k| v.exact_eq(&Cyclotomic::monomial(big_n, k, r.denominator)))
            .ok_or_else(|| {
                Error::Structure(format!("line value {}/{} is not a root of unity", v.render(), r.denominator))
            })?;
        table.push(k);
    }
    Bicharacter::from_table(group, table).map_err(|e| Error::Structure(format!("induced braiding: {e}")))
}
