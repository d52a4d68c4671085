use anyhow::anyhow;
use operad_forge_core::diff::{apply, weight_profile, Embedding};
use operad_forge_core::expansion::ConsequenceTower;
use operad_forge_core::koszul::{dual_presentation, identity_map, opposite_map};
use operad_forge_core::normal_form::{BiComS, DerNovDual, NovS};
use operad_forge_core::presentation::{Presentation, BUILTINS};
use operad_forge_core::term::{parse_polynomial, Polynomial};

use crate::config::{check_cap, ArityRange, CliError};
use crate::report::{self, DimEntry, DimReport, DualReport, EmbedReport, EqvReport};
use crate::{EmbedMap, Format, OpMap, OtherSource, Source, Variety};

fn dims_of(p: &Presentation, arity: ArityRange, progress: bool) -> DimReport {
    let mut tower = ConsequenceTower::new(p);
    let name = p.name().to_string();
    let mut dims = Vec::new();
    for n in arity.iter() {
        if progress {
            tower.extend_with_progress(n, &mut |k, rank, cols| {
                eprintln!("{name}: arity {k}: rank {rank} of {cols}");
            });
        }
        dims.push(DimEntry { n, dim: tower.level(n).dim() });
    }
    DimReport { presentation: name, dims }
}

pub fn dim(source: &Source, arity: ArityRange, format: Format, force: bool, progress: bool) -> Result<(), CliError> {
    let p = source.load()?;
    check_cap(p.signature().len(), arity.hi, force)?;
    let r = dims_of(&p, arity, progress);
    println!("{}", report::dims(&[r], format));
    Ok(())
}

pub fn table(names: &[String], arity: ArityRange, format: Format, force: bool, progress: bool) -> Result<(), CliError> {
    let names: Vec<String> =
        if names.is_empty() { BUILTINS.iter().map(|s| s.to_string()).collect() } else { names.to_vec() };
    let mut ps = Vec::with_capacity(names.len());
    for name in &names {
        let p = Presentation::builtin(name)?;
        check_cap(p.signature().len(), arity.hi, force)?;
        ps.push(p);
    }
    // Output order follows the argument order whatever finishes first.
    let reports: Vec<DimReport> = std::thread::scope(|s| {
        let handles: Vec<_> = ps.iter().map(|p| s.spawn(move || dims_of(p, arity, progress))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    println!("{}", report::dims(&reports, format));
    Ok(())
}

pub fn dual(source: &Source, format: Format) -> Result<(), CliError> {
    let p = source.load()?;
    let d = dual_presentation(&p)?;
    let sig = d.signature();
    let r = DualReport {
        presentation: d.name().to_string(),
        ops: sig.ops().iter().map(|o| o.glyph.to_string()).collect(),
        relations: d.relations().iter().map(|q| q.to_text(sig)).collect(),
    };
    println!("{}", report::dual(&r, &d.to_text(), format));
    Ok(())
}

pub fn eqv(
    source: &Source,
    other: &OtherSource,
    map: OpMap,
    arity: usize,
    format: Format,
    force: bool,
) -> Result<(), CliError> {
    let p1 = source.load()?;
    let p2 = other.load()?;
    let ops = p1.signature().len();
    check_cap(ops.max(p2.signature().len()), arity, force)?;
    let candidates: Vec<(&str, Vec<(usize, bool)>)> = match map {
        OpMap::Identity => vec![("identity", identity_map(ops))],
        OpMap::Opposite => vec![("opposite", opposite_map(ops))],
        OpMap::Any => vec![("identity", identity_map(ops)), ("opposite", opposite_map(ops))],
    };
    let mut found = None;
    for (label, m) in candidates {
        if operad_forge_core::expansion::relation_spaces_equivalent(&p1, &p2, &m, arity)? {
            found = Some(label.to_string());
            break;
        }
    }
    let r = EqvReport {
        left: p1.name().to_string(),
        right: p2.name().to_string(),
        max_arity: arity,
        equivalent: found.is_some(),
        map: found,
    };
    println!("{}", report::eqv(&r, format));
    Ok(())
}

fn builtin_for(v: Variety) -> &'static str {
    match v {
        Variety::NovS => "nov_s",
        Variety::BicomS => "bicom_s",
        Variety::DernovDual => "dernov_dual",
        Variety::Novikov => "novikov",
        Variety::Bicommutative => "bicommutative",
        Variety::Dernov => "dernov",
    }
}

pub fn normal_form(variety: Variety, q: &Polynomial, p: &Presentation) -> Result<Polynomial, CliError> {
    Ok(match variety {
        Variety::NovS => NovS::new().normal_form(q, 0),
        Variety::BicomS => BiComS::new().normal_form(q, 0),
        Variety::DernovDual => {
            let (prec, succ) = DerNovDual::new().split(q);
            &prec + &succ
        }
        _ => {
            if q.is_zero() {
                return Ok(Polynomial::zero());
            }
            let n = q
                .homogeneous_degree()
                .ok_or_else(|| CliError::Input(anyhow!("term is not homogeneous")))?;
            check_cap(p.signature().len(), n, false)?;
            ConsequenceTower::new(p).level(n).reduce(q)?
        }
    })
}

pub fn nf(variety: Variety, term: &str, format: Format) -> Result<(), CliError> {
    let p = Presentation::builtin(builtin_for(variety))?;
    let sig = p.signature();
    let q = parse_polynomial(term, sig)?;
    let out = normal_form(variety, &q, &p)?.to_text(sig);
    match format {
        Format::Json => println!("{}", serde_json::json!({ "variety": p.name(), "term": term, "normal_form": out })),
        Format::Csv => println!("term,normal_form\n{},{}", q.to_text(sig), out),
        Format::Table => println!("{out}"),
    }
    Ok(())
}

pub fn embed(map: EmbedMap, term: &str, format: Format) -> Result<(), CliError> {
    let (name, which) = match map {
        EmbedMap::Tau => ("dernov", Embedding::Tau),
        EmbedMap::TauNov => ("novikov", Embedding::TauNov),
    };
    let sig = Presentation::builtin(name)?.signature().clone();
    let q = parse_polynomial(term, &sig)?;
    let image = apply(which, &q);
    let w = weight_profile(&image);
    let r = EmbedReport {
        term: q.to_text(&sig),
        image: image.to_string(),
        homogeneous: w.homogeneous,
        weight: w.common(),
    };
    println!("{}", report::embed(&r, format));
    Ok(())
}
