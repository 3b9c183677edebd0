use parastat_core::group::{
    bicharacter_to_rmatrix, braiding_on_lines, check_quasitriangular, enumerate_bicharacters, FiniteAbelianGroup,
    QuasitriangularReport, RCoefficient,
};
use serde::Serialize;

use super::{resolve_common, Common, Format};
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, write_csv, write_json};
use crate::ClassifyArgs;

#[derive(Serialize)]
struct ClassifyConfig<'a> {
    group: String,
    #[serde(flatten)]
    common: &'a Common,
}

#[derive(Serialize)]
struct BicharacterRow {
    theta: String,
    exponent_matrix: Vec<Vec<u32>>,
    commutation_factor: bool,
}

#[derive(Serialize)]
struct RMatrixOut {
    denominator: i64,
    coefficients: Vec<RCoefficient>,
}

#[derive(Serialize)]
struct FactorRow {
    theta: String,
    exponent_table: Vec<Vec<u32>>,
    r_matrix: RMatrixOut,
    quasitriangular: QuasitriangularReport,
    braiding_round_trip: bool,
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    config: ClassifyConfig<'a>,
    group: String,
    order: usize,
    exponent: u32,
    bicharacter_count: usize,
    commutation_factor_count: usize,
    bicharacters: Vec<BicharacterRow>,
    factors: Vec<FactorRow>,
    passed: bool,
}

pub fn run(args: &ClassifyArgs, cfg: &Config) -> CliResult<bool> {
    let common = resolve_common(&args.common, cfg)?;
    let setup: String = cfg
        .get(args.group.clone(), "group")?
        .ok_or_else(|| CliError::usage("--group is required"))?;
    let group: FiniteAbelianGroup = setup.parse()?;

    let all = enumerate_bicharacters(&group)?;
    let bicharacters: Vec<BicharacterRow> = all
        .iter()
        .map(|b| BicharacterRow {
            theta: b.to_string(),
            exponent_matrix: b.exponent_matrix().to_vec(),
            commutation_factor: b.is_commutation_factor(),
        })
        .collect();
    let mut factors = Vec::new();
    for theta in all.iter().filter(|b| b.is_commutation_factor()) {
        let r = bicharacter_to_rmatrix(theta);
        let qt = check_quasitriangular(&r);
        let round_trip = braiding_on_lines(&r).is_ok_and(|b| &b == theta);
        factors.push(FactorRow {
            theta: theta.to_string(),
            exponent_table: theta.table_rows(),
            r_matrix: RMatrixOut {
                denominator: r.denominator(),
                coefficients: r.coefficient_list(),
            },
            quasitriangular: qt,
            braiding_round_trip: round_trip,
        });
    }
    let passed = factors
        .iter()
        .all(|f| f.quasitriangular.qt_axioms_ok && f.quasitriangular.triangular && f.braiding_round_trip);

    let report = ClassifyReport {
        config: ClassifyConfig {
            group: group.to_string(),
            common: &common,
        },
        group: group.to_string(),
        order: group.order(),
        exponent: group.exponent(),
        bicharacter_count: bicharacters.len(),
        commutation_factor_count: factors.len(),
        bicharacters,
        factors,
        passed,
    };

    ensure_dir(&common.out)?;
    let path = match common.format {
        Format::Json => write_json(&common.out, "classify.json", &report)?,
        Format::Csv => {
            let header = ["index", "theta", "commutation_factor", "qt_axioms_ok", "triangular", "braiding_round_trip"]
                .map(String::from);
            let rows: Vec<Vec<String>> = report
                .bicharacters
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let f = report.factors.iter().find(|f| f.theta == b.theta);
                    let flag = |get: fn(&FactorRow) -> bool| f.map_or(String::new(), |f| get(f).to_string());
                    vec![
                        i.to_string(),
                        b.theta.clone(),
                        b.commutation_factor.to_string(),
                        flag(|f| f.quasitriangular.qt_axioms_ok),
                        flag(|f| f.quasitriangular.triangular),
                        flag(|f| f.braiding_round_trip),
                    ]
                })
                .collect();
            write_csv(&common.out, "classify.csv", &header, &rows)?
        }
    };
    println!(
        "{}: bicharacters {}, commutation factors {}, {}",
        report.group,
        report.bicharacter_count,
        report.commutation_factor_count,
        if passed { "all R-matrices quasitriangular and triangular" } else { "R-matrix check FAILED" }
    );
    println!("wrote {}", path.display());
    Ok(passed)
}
