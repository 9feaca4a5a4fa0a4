//! Text, CSV and JSON renderings of reports, curves and spectra.

use std::fmt::Write;

use serde::Serialize;

use crate::constants::{grw_defaults, lambda_over_a2, PhysicalConstants};
use crate::limits::{AnalysisReport, ExclusionCurve, Regime};
use crate::rates::CountPrediction;
use crate::uncertainty::AsymmetricValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Structured,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn display_rounded(v: &AsymmetricValue) -> String {
    // half away from zero, unlike `{:.0}`
    format!(
        "{} +{}/-{}",
        v.central.round(),
        v.err_up.round(),
        v.err_down.round()
    )
}

#[derive(Serialize)]
struct AnalysisDocument<'a> {
    #[serde(flatten)]
    report: &'a AnalysisReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    prediction: Option<&'a CountPrediction>,
}

pub fn render_analysis(
    report: &AnalysisReport,
    prediction: Option<&CountPrediction>,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Structured => to_json(&AnalysisDocument { report, prediction }),
        OutputFormat::Csv => analysis_csv(report, prediction),
        OutputFormat::Text => analysis_text(report, prediction),
    }
}

fn analysis_csv(r: &AnalysisReport, prediction: Option<&CountPrediction>) -> String {
    let mut out = String::from("quantity,value,err_up,err_down\n");
    for (name, v) in [("n_expt", &r.n_expt), ("n_ssm", &r.n_ssm), ("n_csl", &r.n_csl)] {
        writeln!(out, "{name},{:e},{:e},{:e}", v.central, v.err_up, v.err_down).unwrap();
    }
    let scalars = [
        ("n_sigma", r.n_sigma),
        ("n_limit", r.n_limit),
        ("live_time_yr", r.live_time_yr),
        ("volume_kilo_m3", r.volume_kilo_m3),
        ("count_coefficient", r.count_coefficient),
        ("model_r2_cm2", r.model_r2_cm2),
        ("gn_bound_at_grw", r.gn_bound_at_grw),
        ("rounded_bound", r.rounded_bound),
        ("ge_bound_at_grw", r.ge_bound_at_grw),
        ("ge_ceiling_at_grw", r.ge_ceiling_at_grw),
        ("strength_ratio", r.strength_ratio),
        ("lambda_over_a2", r.lambda_over_a2),
        ("gn_bound_at_configured", r.gn_bound_at_configured),
        ("ge_bound_at_configured", r.ge_bound_at_configured),
        ("large_a_floor", r.large_a_floor),
        ("small_a_floor", r.small_a_floor),
        ("theoretical_floor", r.curve.theoretical_floor),
        ("experimental_ceiling", r.curve.experimental_ceiling),
    ];
    for (name, v) in scalars {
        writeln!(out, "{name},{v:e},,").unwrap();
    }
    if let Some(p) = prediction {
        writeln!(out, "predicted_count,{:e},,", p.expected_neutrons).unwrap();
    }
    out
}

fn analysis_text(r: &AnalysisReport, prediction: Option<&CountPrediction>) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "CSL deuteron-dissociation analysis").unwrap();
    writeln!(w).unwrap();
    write!(
        w,
        "model                 {} (E_B = {} MeV, 1/kappa = {:.4} fm",
        r.model.kind,
        r.model.binding_energy_mev,
        1.0 / r.model.kappa_per_fm
    )
    .unwrap();
    if let Some(b) = r.model.beta_per_fm {
        write!(w, ", beta/kappa = {:.4}", b / r.model.kappa_per_fm).unwrap();
    }
    writeln!(w, ")").unwrap();
    writeln!(w, "<r^2>                 {:.4e} cm^2", r.model_r2_cm2).unwrap();
    writeln!(
        w,
        "count coefficient     {:.4e} per (g_n - M_n/M_p)^2 yr 10^3 m^3 at GRW",
        r.count_coefficient
    )
    .unwrap();
    writeln!(
        w,
        "exposure              T = {:.4} yr, V = {:.4} x 10^3 m^3",
        r.live_time_yr, r.volume_kilo_m3
    )
    .unwrap();
    writeln!(w).unwrap();
    for (name, v) in [("N_expt", &r.n_expt), ("N_SSM", &r.n_ssm), ("N_CSL", &r.n_csl)] {
        writeln!(w, "{name:<21} {:<22} (exact {:.5})", display_rounded(v), v).unwrap();
    }
    writeln!(
        w,
        "{:<21} {:<22} (exact {:.5})",
        format!("N_CSL limit ({} sigma)", r.n_sigma),
        r.n_limit.round(),
        r.n_limit
    )
    .unwrap();
    writeln!(w).unwrap();
    writeln!(
        w,
        "g_n = M_n/M_p +/- {}   (unrounded {:.5}, GRW lambda/a^2)",
        r.rounded_bound, r.gn_bound_at_grw
    )
    .unwrap();
    writeln!(
        w,
        "|g_e - M_e/M_p| < {:.4e}, i.e. 0 <= g_e < {:.4e} (13 M_e/M_p)",
        r.ge_bound_at_grw, r.ge_ceiling_at_grw
    )
    .unwrap();
    writeln!(
        w,
        "neutron bound is {:.0} times stronger than the electron bound",
        r.strength_ratio
    )
    .unwrap();
    writeln!(w).unwrap();
    let regime = match r.regime {
        Regime::LargeA => "large-a",
        Regime::SmallA => "small-a",
    };
    writeln!(
        w,
        "lambda/a^2 band       {:.3e} < lambda/a^2 < {} s^-1 cm^-2",
        r.curve.theoretical_floor, r.curve.experimental_ceiling
    )
    .unwrap();
    writeln!(
        w,
        "visibility floors     large-a {:.3e}, small-a {:.3e} (regime: {regime})",
        r.large_a_floor, r.small_a_floor
    )
    .unwrap();
    writeln!(
        w,
        "configured lambda/a^2 {:e}: |g_n - M_n/M_p| < {:.4e}, |g_e - M_e/M_p| < {:.4e}",
        r.lambda_over_a2, r.gn_bound_at_configured, r.ge_bound_at_configured
    )
    .unwrap();
    if let Some(p) = prediction {
        writeln!(
            w,
            "predicted CSL count   {:.4e} neutrons for the configured g_n",
            p.expected_neutrons
        )
        .unwrap();
    }
    if !r.warnings.is_empty() {
        writeln!(w).unwrap();
        writeln!(w, "warnings:").unwrap();
        for msg in &r.warnings {
            writeln!(w, "  - {msg}").unwrap();
        }
    }
    out
}

pub fn render_curve(curve: &ExclusionCurve, format: OutputFormat) -> String {
    match format {
        OutputFormat::Structured => to_json(curve),
        OutputFormat::Csv => {
            let mut out = String::new();
            writeln!(out, "# theoretical_floor={:e}", curve.theoretical_floor).unwrap();
            writeln!(out, "# experimental_ceiling={:e}", curve.experimental_ceiling).unwrap();
            writeln!(out, "lambda_over_a2,gn_bound,ge_bound").unwrap();
            for p in &curve.points {
                writeln!(out, "{:e},{:e},{:e}", p.lambda_over_a2, p.gn_bound, p.ge_bound).unwrap();
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "allowed band: {:.3e} < lambda/a^2 < {} s^-1 cm^-2",
                curve.theoretical_floor, curve.experimental_ceiling
            )
            .unwrap();
            writeln!(out, "{:>14} {:>14} {:>14}", "lambda/a^2", "|g_n-Mn/Mp|", "|g_e-Me/Mp|")
                .unwrap();
            for p in &curve.points {
                writeln!(
                    out,
                    "{:>14.4e} {:>14.4e} {:>14.4e}",
                    p.lambda_over_a2, p.gn_bound, p.ge_bound
                )
                .unwrap();
            }
            out
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub k_per_fm: f64,
    /// s⁻¹ per fm⁻¹; `None` when the row failed and failures are tolerated.
    pub rate_density: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumTable {
    pub g_n: f64,
    pub deuteron_rate: f64,
    pub trapezoid_rate: f64,
    pub rows: Vec<SpectrumRow>,
    pub failures: Vec<String>,
}

pub fn render_spectrum(table: &SpectrumTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Structured => to_json(table),
        OutputFormat::Csv => {
            let mut out = String::new();
            writeln!(out, "# g_n={:e}", table.g_n).unwrap();
            writeln!(out, "# deuteron_rate={:e}", table.deuteron_rate).unwrap();
            writeln!(out, "# trapezoid_rate={:e}", table.trapezoid_rate).unwrap();
            writeln!(out, "k_per_fm,rate_density").unwrap();
            for row in &table.rows {
                match row.rate_density {
                    Some(d) => writeln!(out, "{:e},{:e}", row.k_per_fm, d).unwrap(),
                    None => writeln!(out, "{:e},", row.k_per_fm).unwrap(),
                }
            }
            for f in &table.failures {
                writeln!(out, "# failed: {f}").unwrap();
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "dissociation rate {:.4e} s^-1 (grid sum {:.4e}), g_n = {}",
                table.deuteron_rate, table.trapezoid_rate, table.g_n
            )
            .unwrap();
            writeln!(out, "{:>14} {:>16}", "k [fm^-1]", "dP/dt dk [s^-1 fm]").unwrap();
            for row in &table.rows {
                match row.rate_density {
                    Some(d) => writeln!(out, "{:>14.5e} {:>16.5e}", row.k_per_fm, d).unwrap(),
                    None => writeln!(out, "{:>14.5e} {:>16}", row.k_per_fm, "failed").unwrap(),
                }
            }
            out
        }
    }
}

#[derive(Serialize)]
struct ConstantsDocument {
    constants: PhysicalConstants,
    grw_lambda_per_sec: f64,
    grw_a_cm: f64,
    grw_lambda_over_a2: f64,
}

pub fn render_constants(pc: &PhysicalConstants, format: OutputFormat) -> String {
    let grw = grw_defaults();
    let ld = lambda_over_a2(&grw).value();
    match format {
        OutputFormat::Structured => to_json(&ConstantsDocument {
            constants: *pc,
            grw_lambda_per_sec: grw.lambda_rate(),
            grw_a_cm: grw.a_length(),
            grw_lambda_over_a2: ld,
        }),
        OutputFormat::Csv => {
            let mut out = String::from("name,value,unit\n");
            for (name, v, unit) in constant_rows(pc, grw.lambda_rate(), grw.a_length(), ld) {
                writeln!(out, "{name},{v:e},{unit}").unwrap();
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for (name, v, unit) in constant_rows(pc, grw.lambda_rate(), grw.a_length(), ld) {
                writeln!(out, "{name:<22} {v:<16e} {unit}").unwrap();
            }
            writeln!(out, "{:<22} {:<16} 1", "m_n/m_p (decimal)", pc.m_n_over_m_p).unwrap();
            writeln!(out, "{:<22} {:<16} 1 (fixed)", "g_p", 1).unwrap();
            out
        }
    }
}

fn constant_rows(
    pc: &PhysicalConstants,
    lambda: f64,
    a: f64,
    ld: f64,
) -> [(&'static str, f64, &'static str); 9] {
    [
        ("m_e/m_p", pc.m_e_over_m_p, "1"),
        ("m_n/m_p", pc.m_n_over_m_p, "1"),
        ("hbar_c", pc.hbar_c, "MeV fm"),
        ("reduced_mass_np", pc.reduced_mass_np, "MeV/c^2"),
        ("seconds_per_day", pc.seconds_per_day, "s"),
        ("seconds_per_year", pc.seconds_per_year, "s"),
        ("grw_lambda", lambda, "s^-1"),
        ("grw_a", a, "cm"),
        ("grw_lambda_over_a2", ld, "s^-1 cm^-2"),
    ]
}
