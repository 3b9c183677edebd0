use std::fmt;

use crate::group::abelian::{gcd, FiniteAbelianGroup, GroupElement};
use crate::limits::{self, DEFAULT_MAX_BICHARACTERS, DEFAULT_MAX_GROUP_ORDER};
use crate::linalg::kron;
use crate::linalg::ComplexMatrix;
use crate::{Error, Result, C64};

/// A bicharacter `θ: G × G → C*`.
///
/// Every value is a power of `ζ = exp(2πi/N)` with `N` the group exponent, so
/// the full table is held as integer exponents. The generating data is the
/// exponent matrix `a` with `θ(e_i, e_j) = exp(2πi a_ij / gcd(d_i, d_j))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    group: FiniteAbelianGroup,
    matrix: Vec<Vec<u32>>,
    table: Vec<u32>,
}

impl Bicharacter {
    pub fn from_matrix(group: &FiniteAbelianGroup, matrix: Vec<Vec<u32>>) -> Result<Self> {
        let d = group.factors();
        let r = d.len();
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(Error::arg(format!("exponent matrix for {group} must be {r}x{r}")));
        }
        for (i, row) in matrix.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                let m = gcd(d[i], d[j]);
                if a >= m {
                    return Err(Error::arg(format!(
                        "exponent a[{i}][{j}] = {a} out of range 0..{m} for {group}"
                    )));
                }
            }
        }
        let table = build_table(group, &matrix);
        Ok(Bicharacter {
            group: group.clone(),
            matrix,
            table,
        })
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        let r = group.rank();
        Self::from_matrix(group, vec![vec![0; r]; r]).expect("zero matrix is always valid")
    }

    /// Builds a bicharacter from a full `n × n` exponent table over `ζ_N`,
    /// rejecting tables that violate the axioms.
    pub fn from_table(group: &FiniteAbelianGroup, table: Vec<u32>) -> Result<Self> {
        let n = group.order();
        let big_n = group.exponent();
        if table.len() != n * n {
            return Err(Error::shape(format!("table needs {} entries, got {}", n * n, table.len())));
        }
        if table.iter().any(|&t| t >= big_n) {
            return Err(Error::arg("table exponent out of range"));
        }
        if !satisfies_axioms(group, &table) {
            return Err(Error::arg("table is not a bicharacter"));
        }
        let d = group.factors();
        let r = d.len();
        let gen = |i: usize| {
            let mut c = vec![0u32; r];
            c[i] = 1;
            group.index_of(&group.element(c).expect("generator")).expect("generator")
        };
        let mut matrix = vec![vec![0u32; r]; r];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, a) in row.iter_mut().enumerate() {
                let m = gcd(d[i], d[j]);
                let t = table[gen(i) * n + gen(j)];
                // t is a multiple of N/m because the value has order dividing m.
                *a = t / (big_n / m);
            }
        }
        let out = Self::from_matrix(group, matrix)?;
        if out.table != table {
            return Err(Error::arg("table is not a bicharacter"));
        }
        Ok(out)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn exponent_matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    /// Order `N` of the root of unity the table exponents refer to.
    pub fn root_order(&self) -> u32 {
        self.group.exponent()
    }

    /// Row-major `n × n` exponents, indexed by element enumeration order.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn table_rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.group.order()).map(<[u32]>::to_vec).collect()
    }

    pub fn exponent_at(&self, gi: usize, hi: usize) -> u32 {
        self.table[gi * self.group.order() + hi]
    }

    /// Exponent `k` with `θ(g, h) = ζ_N^k`.
    pub fn exponent(&self, g: &GroupElement, h: &GroupElement) -> Result<u32> {
        let gi = self.group.index_of(g)?;
        let hi = self.group.index_of(h)?;
        Ok(self.exponent_at(gi, hi))
    }

    pub fn value(&self, g: &GroupElement, h: &GroupElement) -> Result<C64> {
        Ok(root_of_unity(self.root_order(), self.exponent(g, h)?))
    }

    /// `θ` at element indices.
    pub fn value_at(&self, gi: usize, hi: usize) -> C64 {
        root_of_unity(self.root_order(), self.exponent_at(gi, hi))
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|&t| t == 0)
    }

    /// Exhaustive check of multiplicativity in both slots.
    pub fn satisfies_axioms(&self) -> bool {
        satisfies_axioms(&self.group, &self.table)
    }

    /// `θ(g, h) θ(h, g) = 1` for all pairs.
    pub fn is_commutation_factor(&self) -> bool {
        let n = self.group.order();
        let big_n = self.root_order();
        (0..n).all(|g| (g..n).all(|h| (self.exponent_at(g, h) + self.exponent_at(h, g)).is_multiple_of(big_n)))
    }
}

impl fmt::Debug for Bicharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bicharacter({} {})", self.group, format_matrix(&self.matrix))
    }
}

impl serde::Serialize for Bicharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Bicharacter", 2)?;
        st.serialize_field("group", &self.group.to_string())?;
        st.serialize_field("exponent_matrix", &self.matrix)?;
        st.end()
    }
}

impl fmt::Display for Bicharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_matrix(&self.matrix))
    }
}

/// `a,b;c,d` form used on the command line.
pub fn format_matrix(m: &[Vec<u32>]) -> String {
    m.iter()
        .map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

/// Parses the `a,b;c,d` form.
pub fn parse_matrix(s: &str) -> Result<Vec<Vec<u32>>> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::arg(format!("bad exponent `{}` in `{s}`", x.trim())))
                })
                .collect()
        })
        .collect()
}

/// `exp(2πik/order)`, exact at multiples of a quarter turn and with
/// `root(order - k) == conj(root(k))` bit for bit.
pub(crate) fn root_of_unity(order: u32, k: u32) -> C64 {
    let k = k % order;
    if (4 * k).is_multiple_of(order) {
        return match 4 * k / order {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    if 2 * k > order {
        // conjugate pairs agree bitwise
        return root_of_unity(order, order - k).conj();
    }
    C64::from_polar(1.0, std::f64::consts::TAU * f64::from(k) / f64::from(order))
}

fn build_table(group: &FiniteAbelianGroup, matrix: &[Vec<u32>]) -> Vec<u32> {
    let d = group.factors();
    let big_n = u64::from(group.exponent());
    let n = group.order();
    // weight[i][j] = a_ij · N / gcd(d_i, d_j)
    let weight: Vec<Vec<u64>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &a)| u64::from(a) * (big_n / u64::from(gcd(d[i], d[j]))))
                .collect()
        })
        .collect();
    let elems: Vec<GroupElement> = group.elements().collect();
    let mut table = Vec::with_capacity(n * n);
    for g in &elems {
        for h in &elems {
            let mut t = 0u64;
            for (i, &gi) in g.coords().iter().enumerate() {
                for (j, &hj) in h.coords().iter().enumerate() {
                    t += u64::from(gi) * u64::from(hj) * weight[i][j];
                }
            }
            table.push((t % big_n) as u32);
        }
    }
    table
}

fn satisfies_axioms(group: &FiniteAbelianGroup, table: &[u32]) -> bool {
    let n = group.order();
    let big_n = group.exponent();
    let prod = group.product_table();
    for g in 0..n {
        for h in 0..n {
            let gh = prod[g * n + h];
            for k in 0..n {
                let left = table[gh * n + k];
                if left != (table[g * n + k] + table[h * n + k]) % big_n {
                    return false;
                }
                let hk = prod[h * n + k];
                if table[g * n + hk] != (table[g * n + h] + table[g * n + k]) % big_n {
                    return false;
                }
            }
        }
    }
    // θ(e, ·) = θ(·, e) = 1 follows from multiplicativity, but is cheap to confirm.
    (0..n).all(|g| table[g] == 0 && table[g * n] == 0)
}

/// Number of bicharacters, `Π_{i,j} gcd(d_i, d_j)`.
pub fn bicharacter_count(group: &FiniteAbelianGroup) -> u128 {
    let d = group.factors();
    d.iter()
        .flat_map(|&a| d.iter().map(move |&b| u128::from(gcd(a, b))))
        .product()
}

/// All bicharacters of `group` with the default bounds.
pub fn enumerate_bicharacters(group: &FiniteAbelianGroup) -> Result<Vec<Bicharacter>> {
    enumerate_bicharacters_bounded(group, DEFAULT_MAX_GROUP_ORDER, DEFAULT_MAX_BICHARACTERS)
}

/// All bicharacters, ordered lexicographically by exponent matrix (row-major).
///
/// Candidates come from every choice of values on generator pairs; each is
/// then validated against the axioms on all triples.
pub fn enumerate_bicharacters_bounded(
    group: &FiniteAbelianGroup,
    max_order: usize,
    max_count: usize,
) -> Result<Vec<Bicharacter>> {
    limits::check("group order", group.order(), max_order)?;
    let count = bicharacter_count(group);
    let count = usize::try_from(count).unwrap_or(usize::MAX);
    limits::check("bicharacter count", count, max_count)?;

    let d = group.factors();
    let r = d.len();
    let moduli: Vec<u32> = (0..r * r).map(|k| gcd(d[k / r], d[k % r])).collect();
    let mut digits = vec![0u32; r * r];
    let mut out = Vec::with_capacity(count);
    loop {
        let matrix: Vec<Vec<u32>> = digits.chunks(r).map(<[u32]>::to_vec).collect();
        let candidate = Bicharacter::from_matrix(group, matrix)?;
        if !candidate.satisfies_axioms() {
            return Err(Error::Structure(format!(
                "candidate {candidate} violates the bicharacter axioms"
            )));
        }
        out.push(candidate);
        // odometer increment, last digit fastest
        let mut pos = r * r;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < moduli[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

pub fn commutation_factors(group: &FiniteAbelianGroup) -> Result<Vec<Bicharacter>> {
    Ok(enumerate_bicharacters(group)?
        .into_iter()
        .filter(Bicharacter::is_commutation_factor)
        .collect())
}

/// A homogeneous vector of degree `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedVector {
    pub degree: GroupElement,
    pub coeffs: Vec<C64>,
}

impl GradedVector {
    pub fn new(degree: GroupElement, coeffs: Vec<C64>) -> Self {
        GradedVector { degree, coeffs }
    }
}

/// `ψ(x ⊗ y) = θ(deg x, deg y) · (y ⊗ x)`; the result has degree `deg x + deg y`.
pub fn braid(theta: &Bicharacter, x: &GradedVector, y: &GradedVector) -> Result<GradedVector> {
    let group = theta.group();
    for v in [x, y] {
        if !group.contains(&v.degree) {
            return Err(Error::arg(format!("degree {} is not an element of {group}", v.degree)));
        }
    }
    let factor = theta.value(&x.degree, &y.degree)?;
    let yx = kron(&ComplexMatrix::column(&y.coeffs), &ComplexMatrix::column(&x.coeffs))?;
    Ok(GradedVector {
        degree: group.op(&x.degree, &y.degree),
        coeffs: yx.col(0).into_iter().map(|c| c * factor).collect(),
    })
}
