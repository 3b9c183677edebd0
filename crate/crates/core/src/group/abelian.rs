use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::{Error, Result};

/// `Z_{d1} × … × Z_{dr}` with every `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
}

/// Coordinates `(g_1, …, g_r)` with `0 ≤ g_i < d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<u32>,
}

/// The character `g ↦ Π ω_i^{e_i g_i}` with `ω_i = exp(2πi/d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Character {
    exponents: Vec<u32>,
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::arg("a group needs at least one cyclic factor"));
        }
        if let Some(d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::arg(format!("cyclic factor Z{d} is not allowed (need >= 2)")));
        }
        let mut order: u64 = 1;
        for &d in &factors {
            order = order
                .checked_mul(u64::from(d))
                .filter(|&o| o <= u64::from(u32::MAX))
                .ok_or_else(|| Error::arg("group order overflows"))?;
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    /// Klein four-group `Z2 × Z2`.
    pub fn klein() -> Self {
        FiniteAbelianGroup {
            factors: vec![2, 2],
        }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&d| d as usize).product()
    }

    /// Least common multiple of the factors; every character value is an
    /// `exponent()`-th root of unity.
    pub fn exponent(&self) -> u32 {
        self.factors.iter().fold(1, |acc, &d| lcm(acc, d))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    pub fn element(&self, coords: Vec<u32>) -> Result<GroupElement> {
        let g = GroupElement { coords };
        if !self.contains(&g) {
            return Err(Error::arg(format!("{g} is not an element of {self}")));
        }
        Ok(g)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.rank() && g.coords.iter().zip(&self.factors).all(|(&c, &d)| c < d)
    }

    /// Elements in lexicographic order of their coordinate tuples.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        assert!(index < self.order(), "element index out of range");
        let mut coords = vec![0u32; self.rank()];
        for (c, &d) in coords.iter_mut().zip(&self.factors).rev() {
            *c = (index % d as usize) as u32;
            index /= d as usize;
        }
        GroupElement { coords }
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        if !self.contains(g) {
            return Err(Error::arg(format!("{g} is not an element of {self}")));
        }
        Ok(g.coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize))
    }

    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.factors)
                .map(|((&x, &y), &d)| (x + y) % d)
                .collect(),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &d)| (d - x) % d)
                .collect(),
        }
    }

    /// `g^k` in multiplicative notation.
    pub fn power(&self, a: &GroupElement, k: u32) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &d)| ((u64::from(x) * u64::from(k)) % u64::from(d)) as u32)
                .collect(),
        }
    }

    /// `table[a * n + b]` is the index of `a·b`.
    pub fn product_table(&self) -> Vec<usize> {
        let n = self.order();
        let elems: Vec<GroupElement> = self.elements().collect();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(self.index_of(&self.op(a, b)).expect("closed under product"));
            }
        }
        table
    }

    pub fn inverse_table(&self) -> Vec<usize> {
        self.elements()
            .map(|g| self.index_of(&self.inverse(&g)).expect("closed under inverse"))
            .collect()
    }

    /// Exponent of `⟨χ, g⟩` over the primitive `exponent()`-th root of unity.
    pub fn pairing_exponent(&self, chi: &Character, g: &GroupElement) -> u32 {
        let n = u64::from(self.exponent());
        let total: u64 = chi
            .exponents
            .iter()
            .zip(&g.coords)
            .zip(&self.factors)
            .map(|((&e, &c), &d)| u64::from(e) * u64::from(c) * (n / u64::from(d)))
            .sum();
        (total % n) as u32
    }

    /// The character identified with `g` under the canonical `G ≅ G'`.
    pub fn character_of(&self, g: &GroupElement) -> Character {
        Character {
            exponents: g.coords.clone(),
        }
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        self.elements().map(|g| Character { exponents: g.coords })
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Parses descriptors such as `Z2`, `Z2xZ2`, `Z3xZ4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::arg("empty group descriptor"));
        }
        let factors = s
            .split(['x', 'X', '×'])
            .map(|part| {
                let part = part.trim();
                let digits = part
                    .strip_prefix('Z')
                    .or_else(|| part.strip_prefix('z'))
                    .ok_or_else(|| Error::arg(format!("bad group factor `{part}` in `{s}`")))?;
                if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                    return Err(Error::arg(format!("bad group factor `{part}` in `{s}`")));
                }
                digits
                    .parse::<u32>()
                    .map_err(|_| Error::arg(format!("bad group factor `{part}` in `{s}`")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Self::new(factors)
    }
}

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Character {
    pub fn new(group: &FiniteAbelianGroup, exponents: Vec<u32>) -> Result<Self> {
        let as_elem = GroupElement { coords: exponents };
        if !group.contains(&as_elem) {
            return Err(Error::arg("character exponents out of range"));
        }
        Ok(Character {
            exponents: as_elem.coords,
        })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let g: FiniteAbelianGroup = "Z3xZ4".parse().unwrap();
        assert_eq!(g.factors(), &[3, 4]);
        assert_eq!(g.order(), 12);
        assert_eq!(g.exponent(), 12);
        assert_eq!(g.to_string(), "Z3xZ4");
        for bad in ["Z0", "Z1", "", "Y2", "Z", "Z2xx", "Z-2", "Z2xZ"] {
            assert!(bad.parse::<FiniteAbelianGroup>().is_err(), "{bad}");
        }
    }

    #[test]
    fn lexicographic_enumeration() {
        let g = FiniteAbelianGroup::klein();
        let elems: Vec<Vec<u32>> = g.elements().map(|e| e.coords().to_vec()).collect();
        assert_eq!(elems, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        for (i, e) in g.elements().enumerate() {
            assert_eq!(g.index_of(&e).unwrap(), i);
        }
    }

    #[test]
    fn characters_are_multiplicative() {
        let g: FiniteAbelianGroup = "Z2xZ6".parse().unwrap();
        let n = g.exponent();
        for chi in g.characters() {
            for a in g.elements() {
                for b in g.elements() {
                    let lhs = g.pairing_exponent(&chi, &g.op(&a, &b));
                    let rhs = (g.pairing_exponent(&chi, &a) + g.pairing_exponent(&chi, &b)) % n;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
