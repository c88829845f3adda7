//! Built-in function-set pairs used by the verification suite and the CLI.

use serde::Serialize;

use crate::basis::{Domain, FunctionSet, Member, OrthoFamily};
use crate::error::{Error, Result};
use crate::kernel::GeneralizedKernel;
use crate::quadrature::QuadratureRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureKind {
    /// `φ = ψ = {1, x}` on `[0, 1]`.
    FixtureA,
    /// `φ = ψ = {1, x, …, x^{n−1}}` on `[0, 1]`.
    Monomials,
    /// Two different non-orthogonal polynomial sets on `[-1, 1]`.
    Mixed,
    HermiteWave,
    /// Bidiagonal mixtures of Hermite wave functions, `det G = 1` but `G ≠ I`.
    HermiteNonorth,
    LegendreWave,
    LaguerreWave,
    /// `φ = {1, x}`, `ψ = {p₂, 1}` on `[-1, 1]`: overlap rank 1 = n − 1.
    DegenerateRank1,
    /// `φ = {1, x, x²}`, `ψ = {p₃, 1, x}` on `[-1, 1]`: rank 2 = n − 1.
    DegenerateRank2,
    /// `φ = {1, x, x²}`, `ψ = {p₃, p₄, 1}` on `[-1, 1]`: rank 1 = n − 2.
    DegenerateLowRank,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub min_n: usize,
    pub max_n: usize,
}

impl FixtureKind {
    pub const ALL: [FixtureKind; 10] = [
        FixtureKind::FixtureA,
        FixtureKind::Monomials,
        FixtureKind::Mixed,
        FixtureKind::HermiteWave,
        FixtureKind::HermiteNonorth,
        FixtureKind::LegendreWave,
        FixtureKind::LaguerreWave,
        FixtureKind::DegenerateRank1,
        FixtureKind::DegenerateRank2,
        FixtureKind::DegenerateLowRank,
    ];

    pub fn info(self) -> FixtureInfo {
        let (name, description, min_n, max_n) = match self {
            FixtureKind::FixtureA => ("fixture-a", "phi = psi = {1, x} on [0, 1]", 2, 2),
            FixtureKind::Monomials => ("monomials", "phi = psi = {1, x, ..., x^(n-1)} on [0, 1]", 1, 6),
            FixtureKind::Mixed => (
                "mixed",
                "phi_j = p_j + 0.4 x^(j+1), psi_j = x^j - 0.3 p_(j+1) on [-1, 1] (p = monic Legendre)",
                1,
                6,
            ),
            FixtureKind::HermiteWave => ("hermite-wave", "orthonormal Hermite wave functions", 1, 6),
            FixtureKind::HermiteNonorth => (
                "hermite-nonorth",
                "phi_j = u_j + 0.5 u_(j+1), psi_j = u_j - 0.4 u_(j-1) (u = Hermite wave functions)",
                1,
                6,
            ),
            FixtureKind::LegendreWave => ("legendre-wave", "orthonormal Legendre wave functions", 1, 6),
            FixtureKind::LaguerreWave => ("laguerre-wave", "orthonormal Laguerre wave functions", 1, 6),
            FixtureKind::DegenerateRank1 => (
                "degenerate-rank1",
                "phi = {1, x}, psi = {p_2, 1} on [-1, 1]; rank 1",
                2,
                2,
            ),
            FixtureKind::DegenerateRank2 => (
                "degenerate-rank2",
                "phi = {1, x, x^2}, psi = {p_3, 1, x} on [-1, 1]; rank 2",
                3,
                3,
            ),
            FixtureKind::DegenerateLowRank => (
                "degenerate-low-rank",
                "phi = {1, x, x^2}, psi = {p_3, p_4, 1} on [-1, 1]; rank 1",
                3,
                3,
            ),
        };
        FixtureInfo {
            name,
            description,
            min_n,
            max_n,
        }
    }

    pub fn name(self) -> &'static str {
        self.info().name
    }

    pub fn parse(name: &str) -> Result<Self> {
        FixtureKind::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::Config(format!("unknown fixture `{name}`")))
    }

    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            FixtureKind::DegenerateRank1 | FixtureKind::DegenerateRank2 | FixtureKind::DegenerateLowRank
        )
    }

    /// Fixtures with a single admissible size use it regardless of `n`.
    pub fn build(self, n: usize) -> Result<Fixture> {
        let info = self.info();
        let n = if info.min_n == info.max_n { info.min_n } else { n };
        if n < info.min_n || n > info.max_n {
            return Err(Error::Config(format!(
                "fixture `{}` supports n in {}..={}, got {n}",
                info.name, info.min_n, info.max_n
            )));
        }
        let legendre = |d| Member::monic(OrthoFamily::Legendre, d);
        let sym = Domain::symmetric();
        let (phi, psi) = match self {
            FixtureKind::FixtureA | FixtureKind::Monomials => {
                let set = FunctionSet::monomials(Domain::unit(), n)?;
                (set.clone(), set)
            }
            FixtureKind::Mixed => {
                let phi = (0..n)
                    .map(|j| Member::combination([(1.0, legendre(j)), (0.4, Member::monomial(j + 1))]))
                    .collect();
                let psi = (0..n)
                    .map(|j| Member::combination([(1.0, Member::monomial(j)), (-0.3, legendre(j + 1))]))
                    .collect();
                (FunctionSet::new(sym, phi)?, FunctionSet::new(sym, psi)?)
            }
            FixtureKind::HermiteWave => wave_pair(OrthoFamily::Hermite, n)?,
            FixtureKind::LegendreWave => wave_pair(OrthoFamily::Legendre, n)?,
            FixtureKind::LaguerreWave => wave_pair(OrthoFamily::Laguerre, n)?,
            FixtureKind::HermiteNonorth => {
                let u = |k| Member::wave(OrthoFamily::Hermite, k);
                let phi = (0..n)
                    .map(|j| Member::combination([(1.0, u(j)), (0.5, u(j + 1))]))
                    .collect();
                let psi = (0..n)
                    .map(|j| {
                        if j == 0 {
                            u(0)
                        } else {
                            Member::combination([(1.0, u(j)), (-0.4, u(j - 1))])
                        }
                    })
                    .collect();
                (
                    FunctionSet::new(Domain::RealLine, phi)?,
                    FunctionSet::new(Domain::RealLine, psi)?,
                )
            }
            FixtureKind::DegenerateRank1 => (
                FunctionSet::monomials(sym, 2)?,
                FunctionSet::new(sym, vec![legendre(2), Member::monomial(0)])?,
            ),
            FixtureKind::DegenerateRank2 => (
                FunctionSet::monomials(sym, 3)?,
                FunctionSet::new(sym, vec![legendre(3), Member::monomial(0), Member::monomial(1)])?,
            ),
            FixtureKind::DegenerateLowRank => (
                FunctionSet::monomials(sym, 3)?,
                FunctionSet::new(sym, vec![legendre(3), legendre(4), Member::monomial(0)])?,
            ),
        };
        let label = if info.min_n == info.max_n {
            info.name.to_string()
        } else {
            format!("{}-n{n}", info.name)
        };
        Ok(Fixture { label, phi, psi })
    }
}

fn wave_pair(family: OrthoFamily, n: usize) -> Result<(FunctionSet, FunctionSet)> {
    let set = FunctionSet::wave_functions(family, n)?;
    Ok((set.clone(), set))
}

/// A concrete labelled pair of function sets.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub label: String,
    pub phi: FunctionSet,
    pub psi: FunctionSet,
}

impl Fixture {
    pub fn custom(label: impl Into<String>, phi: FunctionSet, psi: FunctionSet) -> Result<Self> {
        if phi.len() != psi.len() {
            return Err(Error::DimensionMismatch(format!(
                "phi has {} members, psi has {}",
                phi.len(),
                psi.len()
            )));
        }
        if phi.domain() != psi.domain() {
            return Err(Error::DomainMismatch(format!(
                "phi on {}, psi on {}",
                phi.domain(),
                psi.domain()
            )));
        }
        Ok(Fixture {
            label: label.into(),
            phi,
            psi,
        })
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    pub fn domain(&self) -> Domain {
        self.phi.domain()
    }

    /// `name` or `name-n<k>` for the variable-size fixtures.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rule(&self, nodes: usize) -> Result<QuadratureRule> {
        QuadratureRule::for_set(&self.phi, nodes)
    }

    pub fn kernel(&self, nodes: usize) -> Result<GeneralizedKernel> {
        GeneralizedKernel::new(self.phi.clone(), self.psi.clone(), &self.rule(nodes)?)
    }
}

pub fn list() -> Vec<FixtureInfo> {
    FixtureKind::ALL.iter().map(|f| f.info()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::KernelMode;

    #[test]
    fn every_fixture_builds_with_expected_rank() {
        for kind in FixtureKind::ALL {
            let info = kind.info();
            for n in info.min_n..=info.max_n {
                let f = kind.build(n).unwrap();
                let k = f.kernel(40).unwrap();
                let rank = k.gram().rank();
                match kind {
                    FixtureKind::DegenerateRank1 => assert_eq!(rank, 1),
                    FixtureKind::DegenerateRank2 => assert_eq!(rank, 2),
                    FixtureKind::DegenerateLowRank => assert_eq!(rank, 1),
                    _ => {
                        assert_eq!(rank, n, "{}", f.label());
                        assert_eq!(k.mode(), KernelMode::Normalized);
                    }
                }
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for kind in FixtureKind::ALL {
            assert_eq!(FixtureKind::parse(kind.name()).unwrap(), kind);
        }
        assert!(FixtureKind::parse("nope").is_err());
        assert!(FixtureKind::Monomials.build(7).is_err());
        assert_eq!(FixtureKind::FixtureA.build(5).unwrap().n(), 2);
        assert_eq!(FixtureKind::Mixed.build(3).unwrap().label(), "mixed-n3");
        let a = FixtureKind::FixtureA.build(2).unwrap();
        let short = FunctionSet::monomials(Domain::unit(), 1).unwrap();
        assert!(Fixture::custom("x", a.phi.clone(), short).is_err());
    }

    #[test]
    fn nonorthogonal_hermite_has_unit_determinant() {
        let f = FixtureKind::HermiteNonorth.build(4).unwrap();
        let k = f.kernel(40).unwrap();
        assert!((k.gram().det() - 1.0).abs() < 1e-12);
        assert!((k.gram().entry(0, 1) - 0.5).abs() > 0.1 || (k.gram().entry(1, 0)).abs() > 0.1);
    }
}
