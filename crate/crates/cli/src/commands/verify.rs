use parastat_core::algebra::{verify_relations, DegreeAssignment, RelationReport};
use parastat_core::group::Bicharacter;
use serde::Serialize;

use super::{build_rep, resolve_common, resolve_rep, theta_text, Format, RepConfig, SearchRow};
use crate::config::Config;
use crate::error::CliResult;
use crate::output::{ensure_dir, fmt_f64, write_csv, write_json};
use crate::RepArgs;

#[derive(Serialize)]
struct VerifyOutput<'a> {
    config: RepConfig,
    theta_used: Option<&'a Bicharacter>,
    degrees: Option<&'a DegreeAssignment>,
    search: &'a [SearchRow],
    report: &'a RelationReport,
}

pub fn run(args: &RepArgs, cfg: &Config) -> CliResult<bool> {
    let common = resolve_common(&args.common, cfg)?;
    let setup = resolve_rep(args, cfg, common.tol)?;
    let built = build_rep(&setup)?;
    let report = verify_relations(&built.generators, setup.kind, built.interior.as_deref(), common.tol)?;

    ensure_dir(&common.out)?;
    let path = match common.format {
        Format::Json => {
            let out = VerifyOutput {
                config: RepConfig::new(&setup, &common, &theta_text(&setup.theta)),
                theta_used: built.theta.as_ref(),
                degrees: built.degrees.as_ref(),
                search: &built.search,
                report: &report,
            };
            write_json(&common.out, "verify.json", &out)?
        }
        Format::Csv => {
            let header = ["relation", "row", "residual"].map(String::from);
            let rows: Vec<Vec<String>> = report
                .relations
                .iter()
                .map(|r| vec![r.relation.clone(), format!("{:?}", r.row), fmt_f64(r.residual)])
                .collect();
            write_csv(&common.out, "verify.csv", &header, &rows)?
        }
    };

    let theta = built.theta.as_ref().map_or("none".to_string(), ToString::to_string);
    println!(
        "{} p={} modes=({},{}) cutoff={} theta={}: {} relations, dim {}, max residual {}",
        setup.kind,
        setup.p,
        setup.modes_b,
        setup.modes_f,
        setup.cutoff,
        theta,
        report.relations.len(),
        report.dimension,
        fmt_f64(report.max_residual)
    );
    if report.passed {
        println!("PASS");
    } else {
        println!("FAIL: worst relation {}", report.worst_relation.as_deref().unwrap_or("?"));
    }
    println!("wrote {}", path.display());
    Ok(report.passed)
}
