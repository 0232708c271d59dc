use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use gkz_core::exactla::ints;
use gkz_core::gorcone::{gorenstein_report, interior_identity_check, projected_fan};
use gkz_core::gseries::{build_series, deep_point, evaluate, verify_series, Precision};
use gkz_core::polycone::chambers;
use gkz_core::srring::GradedAlgebra;
use gkz_core::triang::{enumerate_regular, ConfigRecord, PointConfiguration, Triangulation};

use crate::parse;
use crate::{Cli, CliError, Command, SeriesArgs};

fn to_value<T: Serialize>(x: &T) -> Result<Value, CliError> {
    serde_json::to_value(x).map_err(|e| CliError::usage(e.to_string()))
}

fn load_config(cli: &Cli) -> Result<PointConfiguration, CliError> {
    let path = cli.input.as_ref().ok_or_else(|| CliError::usage("--input <config.json> is required"))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let rec: ConfigRecord = serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    Ok(PointConfiguration::from_record(&rec)?)
}

fn ring_for(cfg: &PointConfiguration, spec: &str, seed: u64) -> Result<GradedAlgebra, CliError> {
    let t = parse::triangulation(cfg, spec, seed)?;
    Ok(GradedAlgebra::build(cfg, &t)?)
}

fn series_inputs(cli: &Cli, cfg: &PointConfiguration, a: &SeriesArgs) -> Result<(GradedAlgebra, Vec<BigInt>), CliError> {
    let ring = ring_for(cfg, &a.tri.triangulation, cli.seed)?;
    let beta = ints(&parse::beta(cfg, &a.beta)?);
    Ok((ring, beta))
}

pub fn run(cli: &Cli) -> Result<Value, CliError> {
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::Kernel => Ok(json!({
            "A": to_value(cfg.a())?,
            "a0vee": cfg.a0vee().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "B": to_value(cfg.b())?,
            "rank": cfg.rank(),
            "corank": cfg.corank(),
        })),
        Command::Triangulate { weights, heights } => {
            let t = match (weights, heights) {
                (Some(w), None) => Triangulation::from_weight(&cfg, &parse::rational_list(w)?)?,
                (None, Some(d)) => Triangulation::from_heights(&cfg, &parse::rational_list(d)?)?,
                _ => return Err(CliError::usage("give exactly one of --weights or --heights")),
            };
            to_value(&t.to_record())
        }
        Command::Enumerate => to_value(&enumerate_regular(&cfg, cli.seed)?.to_record()),
        Command::Ring(t) => to_value(&ring_for(&cfg, &t.triangulation, cli.seed)?.report()),
        Command::Series(a) => {
            let (ring, beta) = series_inputs(cli, &cfg, a)?;
            to_value(&build_series(&ring, &beta, a.order)?.to_record())
        }
        Command::Verify { series, random_relations } => {
            let (ring, beta) = series_inputs(cli, &cfg, series)?;
            let report = verify_series(&ring, &beta, series.order, *random_relations, cli.seed)?;
            let v = to_value(&report)?;
            if report.all_passed {
                Ok(v)
            } else {
                Err(CliError::Failed(v))
            }
        }
        Command::Evaluate { series, z, deep, precision, no_domain_check } => {
            let (ring, beta) = series_inputs(cli, &cfg, series)?;
            let point = match (z, deep) {
                (Some(z), _) => parse::complex_list(z)?,
                (None, Some(f)) => deep_point(&ring, *f, cli.seed),
                (None, None) => return Err(CliError::usage("give --z or --deep")),
            };
            let s = build_series(&ring, &beta, series.order)?;
            let e = evaluate(&ring, &s, &point, !no_domain_check, Precision::from_bits(*precision))?;
            Ok(json!({
                "precision_bits": e.precision_bits,
                "z": point.iter().map(|c| parse::format_complex(*c)).collect::<Vec<_>>(),
                "basis": ring.report().basis,
                "value": e.value.coords().iter().map(|c| parse::format_complex(*c)).collect::<Vec<_>>(),
                "domain": to_value(&e.domain)?,
                "boundary_magnitude": e.boundary_magnitude,
                "tail_bound": e.tail_bound,
                "terms": s.len(),
            }))
        }
        Command::Gorenstein { tri, i0, degree_bound } => {
            let t = parse::triangulation(&cfg, &tri.triangulation, cli.seed)?;
            let report = gorenstein_report(&cfg, &t)?;
            let i0 = match i0 {
                Some(s) => parse::simplex(s)?,
                None => t.maximal()[0].clone(),
            };
            let fan = projected_fan(&cfg, &t, &i0)?;
            Ok(json!({
                "report": to_value(&report)?,
                "interior_identity": {
                    "degree_bound": degree_bound,
                    "holds": interior_identity_check(&cfg, &t, *degree_bound)?,
                },
                "projected_fan": to_value(&fan)?,
            }))
        }
        Command::Chambers => {
            let ch = chambers(cfg.corank(), &cfg.projections());
            let signs: Vec<String> = ch.iter().map(|c| c.signs.to_string()).collect();
            let closed = ch.iter().all(|c| signs.contains(&c.signs.negate().to_string()));
            Ok(json!({
                "count": ch.len(),
                "closed_under_negation": closed,
                "sign_vectors": signs,
                "chambers": to_value(&ch)?,
            }))
        }
    }
}
