//! Exactness of sequences of presentation maps after abelianization.

use num_bigint::BigInt;
use serde::Serialize;

use super::matrix::{left_kernel, IntMatrix, Lattice};
use super::presentation::PresentationMap;
use crate::error::{invalid, Error, Result};

pub const ABELIAN_RANK_GUARD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianExactness {
    /// `g ∘ f` vanishes on abelianizations.
    pub composite_trivial: bool,
    /// Every class killed by `g` comes from `f`.
    pub kernel_in_image: bool,
}

impl AbelianExactness {
    pub fn exact(&self) -> bool {
        self.composite_trivial && self.kernel_in_image
    }
}

fn guard(map: &PresentationMap) -> Result<()> {
    let worst = map.source.generator_count().max(map.target.generator_count());
    if worst > ABELIAN_RANK_GUARD {
        return Err(Error::Guard(format!("{worst} generators exceed the abelian rank guard {ABELIAN_RANK_GUARD}")));
    }
    Ok(())
}

/// Preimage under `m` (acting on row vectors) of the lattice `target`:
/// `{v : v·m ∈ target}`.
fn preimage(m: &IntMatrix, target: &Lattice) -> Lattice {
    let basis = target.basis_matrix();
    let stacked = m.stack(&basis);
    let kernel = left_kernel(&stacked);
    let rows: Vec<Vec<BigInt>> = (0..kernel.rows()).map(|i| kernel.row(i)[..m.rows()].to_vec()).collect();
    Lattice::spanned_by(&IntMatrix::from_rows_with_cols(&rows, m.rows()))
}

/// Exactness at the middle term of `A -f-> B -g-> C` on abelianizations,
/// decided with Hermite normal forms.
pub fn check_exact_abelian(f: &PresentationMap, g: &PresentationMap) -> Result<AbelianExactness> {
    if f.target != g.source {
        return Err(invalid("maps are not composable"));
    }
    guard(f)?;
    guard(g)?;
    let fm = f.abelian_matrix();
    let gm = g.abelian_matrix();
    let middle = f.target.relator_lattice();
    let target = g.target.relator_lattice();
    let composite = fm.mul(&gm);
    let composite_trivial = (0..composite.rows()).all(|i| target.contains(composite.row(i)));
    let image = Lattice::spanned_by(&fm).sum(&middle);
    let kernel = preimage(&gm, &target);
    Ok(AbelianExactness { composite_trivial, kernel_in_image: image.contains_lattice(&kernel) })
}

/// Whether `f` is injective on abelianizations.
pub fn abelian_injective(f: &PresentationMap) -> Result<bool> {
    guard(f)?;
    let kernel = preimage(&f.abelian_matrix(), &f.target.relator_lattice());
    Ok(f.source.relator_lattice().contains_lattice(&kernel))
}

/// Whether `f` is surjective on abelianizations.
pub fn abelian_surjective(f: &PresentationMap) -> Result<bool> {
    guard(f)?;
    let image = Lattice::spanned_by(&f.abelian_matrix()).sum(&f.target.relator_lattice());
    Ok(image.contains_lattice(&Lattice::full(f.target.generator_count())))
}

/// Whether `f` induces an isomorphism on abelianizations.
pub fn abelian_isomorphism(f: &PresentationMap) -> Result<bool> {
    Ok(abelian_injective(f)? && abelian_surjective(f)?)
}
