use operad_forge_core::diff::{tau_image_rank, verify_identity_under_tau, Embedding};
use operad_forge_core::expansion::{relation_spaces_equivalent, ConsequenceTower};
use operad_forge_core::koszul::{check_independence, dual_presentation, identity_map, opposite_map};
use operad_forge_core::normal_form::{census_b, census_n, CensusMode};
use operad_forge_core::presentation::Presentation;
use operad_forge_core::term::parse_monomial;

use crate::config::{check_cap, CliError};
use crate::report::{self, CheckResult, VerifyReport};
use crate::{Check, Format};

fn builtin(name: &str) -> Result<Presentation, CliError> {
    Ok(Presentation::builtin(name)?)
}

fn result(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name: name.into(), passed, detail: detail.into() }
}

fn tau_dernov(arity: usize, out: &mut Vec<CheckResult>) -> Result<(), CliError> {
    let dn = builtin("dernov")?;
    let sig = dn.signature().clone();
    for (i, r) in dn.relations().iter().enumerate() {
        let ok = verify_identity_under_tau(r, Embedding::Tau);
        out.push(result(format!("tau-dernov/relation-{}", i + 1), ok, r.to_text(&sig)));
    }
    let nov = builtin("novikov")?;
    for (i, r) in nov.relations().iter().enumerate() {
        let ok = verify_identity_under_tau(r, Embedding::TauNov);
        out.push(result(format!("tau-nov/relation-{}", i + 1), ok, r.to_text(nov.signature())));
    }
    let mut tower = ConsequenceTower::new(&dn);
    for n in 2..=arity {
        let rank = tau_image_rank(n);
        let dim = tower.level(n).dim();
        out.push(result(format!("tau-dernov/rank-{n}"), rank == dim, format!("image rank {rank}, dim {dim}")));
    }
    Ok(())
}

fn split(arity: usize, out: &mut Vec<CheckResult>) -> Result<(), CliError> {
    let mut tower = ConsequenceTower::new(&builtin("dernov_dual")?);
    for n in 2..=arity {
        let dim = tower.level(n).dim();
        let a = census_n(n, CensusMode::Multilinear);
        let b = census_b(n, CensusMode::Multilinear);
        out.push(result(format!("split/{n}"), dim as u64 == a + b, format!("dim {dim} = {a} + {b}")));
    }
    Ok(())
}

fn independence(out: &mut Vec<CheckResult>) -> Result<(), CliError> {
    let dual = dual_presentation(&builtin("bicommutative")?)?;
    let sig = dual.signature().clone();
    let monos = ["(a*b)*c", "(b*a)*c", "c*(a*b)", "c*(b*a)"]
        .iter()
        .map(|t| parse_monomial(t, &sig))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = check_independence(&dual, &monos, 3)?;
    out.push(result("independence-bicom-dual", ok, "(ab)c, (ba)c, c(ab), c(ba)"));
    Ok(())
}

fn census(arity: usize, out: &mut Vec<CheckResult>) -> Result<(), CliError> {
    let mut nov = ConsequenceTower::new(&builtin("nov_s")?);
    let mut bic = ConsequenceTower::new(&builtin("bicom_s")?);
    for n in 1..=arity {
        let (c, d) = (census_n(n, CensusMode::Multilinear), nov.level(n).dim());
        out.push(result(format!("census-n/{n}"), c == d as u64, format!("census {c}, dim {d}")));
        let (c, d) = (census_b(n, CensusMode::Multilinear), bic.level(n).dim());
        out.push(result(format!("census-b/{n}"), c == d as u64, format!("census {c}, dim {d}")));
    }
    Ok(())
}

fn self_duality(arity: usize, out: &mut Vec<CheckResult>) -> Result<(), CliError> {
    let nov = builtin("novikov")?;
    let ok = relation_spaces_equivalent(&dual_presentation(&nov)?, &nov, &opposite_map(1), arity)?;
    out.push(result("self-duality/novikov", ok, format!("opposite map, arities 1..{arity}")));
    let bic = builtin("bicommutative")?;
    let ok = relation_spaces_equivalent(&dual_presentation(&bic)?, &bic, &identity_map(1), arity)?;
    out.push(result("self-duality/bicommutative", ok, format!("identity map, arities 1..{arity}")));
    Ok(())
}

pub fn run(check: Check, arity: Option<usize>, format: Format, force: bool) -> Result<(), CliError> {
    let mut checks = Vec::new();
    let pick = |default: usize, ops: usize| -> Result<usize, CliError> {
        let n = arity.unwrap_or(default);
        check_cap(ops, n, force)?;
        Ok(n)
    };
    let all = check == Check::All;
    if all || check == Check::TauDernov {
        tau_dernov(pick(3, 2)?, &mut checks)?;
    }
    if all || check == Check::Split {
        split(pick(5, 2)?, &mut checks)?;
    }
    if all || check == Check::IndependenceBicomDual {
        independence(&mut checks)?;
    }
    if all || check == Check::Census {
        census(pick(5, 1)?, &mut checks)?;
    }
    if all || check == Check::SelfDuality {
        self_duality(pick(4, 1)?, &mut checks)?;
    }
    let passed = checks.iter().all(|c| c.passed);
    let r = VerifyReport { passed, checks };
    println!("{}", report::verify(&r, format));
    if passed {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}
