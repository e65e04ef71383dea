//! Runnable worked examples with their expected outputs.

use serde::Serialize;

use crate::bibundle::{is_biprincipal, morita_equivalent};
use crate::error::Result;
use crate::fpgroup::coset::{probably_isomorphic_to_group, IsoVerdict};
use crate::fpgroup::homcount::default_signature;
use crate::fpgroup::presentation::GroupPresentation;
use crate::gen::permutation_action;
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;
use crate::homotopy::{borel_pi1, check_eff_sequence, check_example4_sequence, pi0, pi1_finite, pi1_nerve};
use crate::report::Report;
use crate::simplicial::{ComplexAction, SimplicialComplex};

#[derive(Debug, Clone, Serialize)]
pub struct CatalogRun {
    pub name: &'static str,
    pub passed: bool,
    pub lines: Vec<String>,
    /// Expected lines that did not appear.
    pub missing: Vec<&'static str>,
    pub failed_checks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
}

#[derive(Debug, Default)]
struct Outcome {
    lines: Vec<String>,
    failed: Vec<String>,
    report: Option<Report>,
}

impl Outcome {
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn check(&mut self, name: &str, ok: bool) {
        if !ok {
            self.failed.push(name.to_string());
        }
    }

    fn with_report(&mut self, r: Report) {
        self.check("report passes", r.passed());
        self.line(r.summary());
        self.report = Some(r);
    }
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// Lines the run must print verbatim.
    pub expected: &'static [&'static str],
    build: fn() -> Result<Outcome>,
}

impl CatalogEntry {
    pub fn run(&self) -> Result<CatalogRun> {
        let out = (self.build)()?;
        let missing: Vec<&'static str> = self.expected.iter().copied().filter(|e| !out.lines.iter().any(|l| l == e)).collect();
        Ok(CatalogRun {
            name: self.name,
            passed: missing.is_empty() && out.failed.is_empty(),
            lines: out.lines,
            missing,
            failed_checks: out.failed,
            report: out.report,
        })
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "pair",
            description: "pair groupoid on three points against a point",
            expected: &["equivalent", "pi0 = 1", "pi1 = 0"],
            build: pair,
        },
        CatalogEntry {
            name: "submersion-cech",
            description: "Cech groupoid of a surjection of finite sets against its base",
            expected: &["equivalent", "pi0 = 3"],
            build: submersion_cech,
        },
        CatalogEntry {
            name: "group-z2",
            description: "one-object groupoid of Z/2",
            expected: &["pi1 = Z/2", "isotropy and nerve: yes-certified"],
            build: || group_entry(FiniteGroup::cyclic(2)),
        },
        CatalogEntry {
            name: "group-z3",
            description: "one-object groupoid of Z/3",
            expected: &["pi1 = Z/3", "isotropy and nerve: yes-certified"],
            build: || group_entry(FiniteGroup::cyclic(3)),
        },
        CatalogEntry {
            name: "group-s3",
            description: "one-object groupoid of S3",
            expected: &["pi1 abelianized = Z/2", "isotropy and nerve: yes-certified"],
            build: || group_entry(FiniteGroup::symmetric(3)),
        },
        CatalogEntry {
            name: "action-free",
            description: "Z/3 rotating a hexagon",
            expected: &["pi1 = Z", "pi1(X) = Z"],
            build: action_free,
        },
        CatalogEntry {
            name: "action-fixed",
            description: "S3 permuting the vertices of a triangle",
            expected: &["pi1(X) = Z"],
            build: action_fixed,
        },
        CatalogEntry {
            name: "fundamental-groupoid",
            description: "transitive groupoid on four objects with isotropy Z/3",
            expected: &["equivalent", "pi0 = 1", "pi1 = Z/3"],
            build: fundamental_groupoid,
        },
        CatalogEntry {
            name: "mobius",
            description: "Z/2 reflecting a path on eight vertices",
            expected: &["pi1 = Z/2", "hom-signature matches Z/2"],
            build: mobius,
        },
        CatalogEntry {
            name: "kronecker-analog",
            description: "free Z/2 on a hexagon: an extension of Z/2 by Z (analog only, not an irrational rotation)",
            expected: &["pi1 = Z", "pi1(X) = Z", "fiber image has index 2"],
            build: kronecker_analog,
        },
        CatalogEntry {
            name: "eff-z4-c6",
            description: "Z/4 acting on a hexagon through Z/2",
            expected: &["|K| = 2", "exact-abelian-only: pass; hom-signature: pass"],
            build: eff_z4_c6,
        },
    ]
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name)
}

fn morita_lines(out: &mut Outcome, g: &FiniteGroupoid, h: &FiniteGroupoid) {
    let d = morita_equivalent(g, h);
    out.line(if d.equivalent { "equivalent" } else { "not equivalent" });
    out.check("witness is biprincipal", d.witness.as_ref().is_some_and(is_biprincipal));
}

fn pair() -> Result<Outcome> {
    let mut out = Outcome::default();
    let g = FiniteGroupoid::pair_groupoid(3)?;
    morita_lines(&mut out, &g, &FiniteGroupoid::unit_groupoid(1));
    out.line(format!("pi0 = {}", pi0(&g, 0)?.len()));
    let pi1 = pi1_finite(&g, 0)?;
    out.line(if pi1.order() == 1 { "pi1 = 0".to_string() } else { format!("pi1 has order {}", pi1.order()) });
    out.check("nerve is simply connected", pi1_nerve(&g, 0)?.abelianization().is_trivial());
    Ok(out)
}

/// Arrows `(u, v)` with `f(u) = f(v)` for `f(u) = u mod 3` on six points.
fn submersion_cech() -> Result<Outcome> {
    let mut out = Outcome::default();
    let f = |u: usize| u % 3;
    let arrows: Vec<(usize, usize)> = (0..6).flat_map(|a| (0..6).map(move |b| (a, b))).filter(|&(a, b)| f(a) == f(b)).collect();
    let id = |a: usize, b: usize| arrows.iter().position(|&x| x == (a, b)).expect("same fibre");
    let cech = FiniteGroupoid::from_fn(
        6,
        arrows.iter().map(|&(_, b)| b).collect(),
        arrows.iter().map(|&(a, _)| a).collect(),
        arrows.iter().map(|&(a, b)| id(b, a)).collect(),
        (0..6).map(|u| id(u, u)).collect(),
        |g, h| id(arrows[g].0, arrows[h].1),
    )
    .validated()?;
    morita_lines(&mut out, &cech, &FiniteGroupoid::unit_groupoid(3));
    out.line(format!("pi0 = {}", pi0(&cech, 0)?.len()));
    Ok(out)
}

fn group_entry(g: FiniteGroup) -> Result<Outcome> {
    let mut out = Outcome::default();
    let gg = FiniteGroupoid::group_as_groupoid(&g);
    let iso = pi1_finite(&gg, 0)?;
    let nerve = pi1_nerve(&gg, 0)?;
    let ab = nerve.abelianization();
    out.line(if g.is_abelian() { format!("pi1 = {ab}") } else { format!("pi1 abelianized = {ab}") });
    let both = iso.is_isomorphic(&g) && probably_isomorphic_to_group(&nerve, &g) == IsoVerdict::YesCertified;
    out.line(if both { "isotropy and nerve: yes-certified" } else { "isotropy and nerve: not certified" });
    Ok(out)
}

fn rotation(n: usize, m: usize) -> Result<ComplexAction> {
    ComplexAction::from_fn(FiniteGroup::cyclic(n), SimplicialComplex::cycle(m)?, |g, v| (v + g * m / n) % m)
}

fn sequence_lines(out: &mut Outcome, r: Report) {
    out.line(format!("pi1 = {}", r.facts["pi1"]));
    out.line(format!("pi1(X) = {}", r.facts["pi1(X)"]));
    out.with_report(r);
}

fn action_free() -> Result<Outcome> {
    let mut out = Outcome::default();
    sequence_lines(&mut out, check_example4_sequence(&rotation(3, 6)?, 0)?);
    Ok(out)
}

fn action_fixed() -> Result<Outcome> {
    let mut out = Outcome::default();
    let a = permutation_action(SimplicialComplex::cycle(3)?, &[vec![1, 0, 2], vec![1, 2, 0]])?;
    sequence_lines(&mut out, check_example4_sequence(&a, 0)?);
    Ok(out)
}

fn fundamental_groupoid() -> Result<Outcome> {
    let mut out = Outcome::default();
    let z3 = FiniteGroup::cyclic(3);
    let g = FiniteGroupoid::transitive(4, &z3)?;
    morita_lines(&mut out, &g, &FiniteGroupoid::group_as_groupoid(&z3));
    out.line(format!("pi0 = {}", pi0(&g, 0)?.len()));
    out.line(format!("pi1 = {}", pi1_nerve(&g, 2)?.abelianization()));
    out.check("isotropy is Z/3", pi1_finite(&g, 2)?.is_isomorphic(&z3));
    Ok(out)
}

fn mobius() -> Result<Outcome> {
    let mut out = Outcome::default();
    let a = permutation_action(SimplicialComplex::path(8)?, &[(0..8).rev().collect()])?;
    let r = check_example4_sequence(&a, 0)?;
    let model = borel_pi1(&a, 0)?;
    let sig = default_signature(model.presentation())?;
    let z2 = default_signature(&GroupPresentation::cyclic(2))?;
    out.line(format!("pi1 = {}", r.facts["pi1"]));
    out.line(if sig == z2 { "hom-signature matches Z/2".to_string() } else { format!("hom-signature {sig:?} differs from Z/2") });
    out.with_report(r);
    Ok(out)
}

fn kronecker_analog() -> Result<Outcome> {
    let mut out = Outcome::default();
    let a = rotation(2, 6)?;
    let model = borel_pi1(&a, 0)?;
    let image = crate::fpgroup::Lattice::spanned_by(&model.fiber_map.abelian_matrix()).sum(&model.presentation().relator_lattice());
    let snf = crate::fpgroup::smith_normal_form(&image.basis_matrix());
    let index: num_bigint::BigInt = snf.diagonal().iter().product();
    sequence_lines(&mut out, check_example4_sequence(&a, 0)?);
    out.line(format!("fiber image has index {index}"));
    Ok(out)
}

fn eff_z4_c6() -> Result<Outcome> {
    let mut out = Outcome::default();
    let a = ComplexAction::from_fn(FiniteGroup::cyclic(4), SimplicialComplex::cycle(6)?, |g, v| (v + 3 * g) % 6)?;
    let r = check_eff_sequence(&a, 0)?;
    out.line(format!("|K| = {}", r.facts["|K|"]));
    out.line(format!("pi1 = {}", r.facts["pi1"]));
    out.line(format!("pi1(Eff) = {}", r.facts["pi1(Eff)"]));
    out.with_report(r);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_passes() {
        for e in entries() {
            let run = e.run().unwrap();
            assert!(run.passed, "{}: {:?}", e.name, run);
        }
    }
}
