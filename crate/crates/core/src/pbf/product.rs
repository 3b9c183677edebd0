use crate::algebra::GeneratorMap;
use crate::fock::{op_degree, GreenAnsatzRep};
use crate::group::Bicharacter;
use crate::limits;
use crate::linalg::{sparse_kron, SparseMatrix};
use crate::{Error, Result, C64};

/// Generators of two Green-ansatz representations on `A ⊗ B`.
#[derive(Clone, Debug)]
pub struct BraidedProduct {
    pub generators: GeneratorMap,
    pub dim: usize,
    /// Product of the two interior masks.
    pub interior: Vec<bool>,
}

/// Embeds `x` from `a` as `x ⊗ I` and `y` from `b` as `D ⊗ y`, where `D`
/// scales a basis vector of `a` of degree `h` by `θ(deg y, h)`.
///
/// Both representations must be graded by the group of `theta`, and their
/// generator labels must be disjoint.
pub fn braided_product_rep(a: &GreenAnsatzRep, b: &GreenAnsatzRep, theta: &Bicharacter) -> Result<BraidedProduct> {
    let g = theta.group();
    if &a.degrees.group != g || &b.degrees.group != g {
        return Err(Error::arg(format!(
            "factor lives on {g}, representations are graded by {} and {}",
            a.degrees.group, b.degrees.group
        )));
    }
    if !theta.is_commutation_factor() {
        return Err(Error::arg(format!("factor {theta} on {g} is not skew-symmetric")));
    }
    if let Some(l) = a.generators.keys().find(|l| b.generators.contains_key(l)) {
        return Err(Error::arg(format!("generator {l} appears in both factors")));
    }
    let (da, db) = (a.dim(), b.dim());
    let dim = limits::checked_product("braided tensor product", &[da, db], limits::max_sparse_dim())?;

    let degree_index: Vec<usize> = (0..da)
        .map(|i| g.index_of(&a.basis_degree(i)))
        .collect::<Result<_>>()?;
    let mut generators = GeneratorMap::new();
    let id_b = SparseMatrix::identity(db);
    for (label, x) in &a.generators {
        generators.insert(*label, sparse_kron(x, &id_b)?);
    }
    for (label, y) in &b.generators {
        let gi = g.index_of(&op_degree(&b.degrees, *label))?;
        let diag: Vec<C64> = degree_index.iter().map(|&h| theta.value_at(gi, h)).collect();
        generators.insert(*label, sparse_kron(&SparseMatrix::from_diagonal(&diag), y)?);
    }
    let (ia, ib) = (a.interior_mask(), b.interior_mask());
    let interior = ia.iter().flat_map(|&x| ib.iter().map(move |&y| x && y)).collect();
    Ok(BraidedProduct {
        generators,
        dim,
        interior,
    })
}
