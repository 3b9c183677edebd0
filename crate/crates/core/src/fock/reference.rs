use serde::Serialize;

use crate::{Error, Result};

/// Closed-form single-mode paraboson data at level `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingleModeReference {
    pub p: usize,
    pub n: usize,
    /// `|2n⟩ = (B⁺)^{2n} |0⟩ / norm_even`
    pub norm_even: f64,
    /// `|2n+1⟩ = (B⁺)^{2n+1} |0⟩ / norm_odd`
    pub norm_odd: f64,
    /// `⟨2n+1| B⁺ |2n⟩`
    pub me_up_even: f64,
    /// `⟨2n+2| B⁺ |2n+1⟩`
    pub me_up_odd: f64,
}

/// Rising factorial `(x)_n`.
pub fn pochhammer(x: f64, n: usize) -> f64 {
    (0..n).map(|k| x + k as f64).product()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn norm_even(p: f64, n: usize) -> f64 {
    2f64.powi(n as i32) * (factorial(n) * pochhammer(p / 2.0, n)).sqrt()
}

fn norm_odd(p: f64, n: usize) -> f64 {
    2f64.powi(n as i32) * (factorial(n) * 2.0 * pochhammer(p / 2.0, n + 1)).sqrt()
}

/// Normalization constants of the order-`p` single-mode paraboson Fock
/// states and the raising matrix elements they imply.
pub fn single_mode_reference(p: usize, n: usize) -> Result<SingleModeReference> {
    if p == 0 {
        return Err(Error::arg("order p must be at least 1"));
    }
    let pf = p as f64;
    let (ne, no, ne_next) = (norm_even(pf, n), norm_odd(pf, n), norm_even(pf, n + 1));
    Ok(SingleModeReference {
        p,
        n,
        norm_even: ne,
        norm_odd: no,
        me_up_even: no / ne,
        me_up_odd: ne_next / no,
    })
}

/// `⟨m+1| B⁺ |m⟩` for any level `m`.
pub fn raising_element(p: usize, m: usize) -> Result<f64> {
    let r = single_mode_reference(p, m / 2)?;
    Ok(if m.is_multiple_of(2) { r.me_up_even } else { r.me_up_odd })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        for p in 1..=4 {
            for n in 0..6 {
                let r = single_mode_reference(p, n).unwrap();
                assert!((r.me_up_even - ((2 * n + p) as f64).sqrt()).abs() < 1e-12);
                assert!((r.me_up_odd - ((2 * n + 2) as f64).sqrt()).abs() < 1e-12);
            }
        }
        let r = single_mode_reference(3, 1).unwrap();
        assert!((r.norm_even - 2.0 * 1.5f64.sqrt()).abs() < 1e-14);
        assert!((single_mode_reference(5, 0).unwrap().me_up_even - 5f64.sqrt()).abs() < 1e-14);
        for m in 0..8 {
            assert!((raising_element(1, m).unwrap() - ((m + 1) as f64).sqrt()).abs() < 1e-12);
        }
        assert!(single_mode_reference(0, 0).is_err());
    }
}
