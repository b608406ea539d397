//! CSV serialization of experiment reports.
//!
//! Long format, one metric per row, values printed with six significant
//! digits and seeds as unsigned decimals. The configuration is echoed as
//! `#`-prefixed lines before the header so every file is self-describing.

use std::io::{self, Write};

use crate::experiments::{ExperimentReport, SummaryRow};

/// Six significant digits, plain decimal notation.
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn write_csv(report: &ExperimentReport, w: &mut impl Write) -> io::Result<()> {
    for line in &report.config_lines {
        writeln!(w, "# {line}")?;
    }
    writeln!(
        w,
        "experiment,grid_index,n,p,delta,adversary,trial,seed,metric,value"
    )?;
    for row in &report.rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            report.name.as_str(),
            row.grid.index,
            row.grid.n,
            format_sig6(row.grid.p),
            row.grid.delta.map(format_sig6).unwrap_or_default(),
            row.grid.adversary.map(|a| a.as_str()).unwrap_or_default(),
            row.trial,
            row.seed,
            row.metric,
            format_sig6(row.value)
        )?;
    }
    Ok(())
}

pub fn render_summary(report: &ExperimentReport) -> String {
    let mut out = String::new();
    out.push_str("grid_index n p delta adversary metric mean ci95_half_width trials\n");
    for s in &report.summaries {
        out.push_str(&summary_line(s));
        out.push('\n');
    }
    out
}

fn summary_line(s: &SummaryRow) -> String {
    format!(
        "{} {} {} {} {} {} {} {} {}",
        s.grid.index,
        s.grid.n,
        format_sig6(s.grid.p),
        s.grid.delta.map(format_sig6).unwrap_or_else(|| "-".into()),
        s.grid
            .adversary
            .map(|a| a.as_str().to_string())
            .unwrap_or_else(|| "-".into()),
        s.metric,
        format_sig6(s.mean),
        format_sig6(s.ci_half_width),
        s.trials
    )
}
