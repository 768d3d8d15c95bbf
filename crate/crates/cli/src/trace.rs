use std::io::Write;

use mlmarket_core::message_passing::MessagePassingReport;

use crate::error::{CliError, Result};

/// One row per (sweep, good): prices before and after, the sweep's
/// clearing residual, then every agent's holding in that good.
pub fn write_trace<W: Write>(
    out: W,
    report: &MessagePassingReport,
    labels: &[String],
    agent_ids: &[String],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![
        "sweep".to_owned(),
        "good".to_owned(),
        "old_price".to_owned(),
        "new_price".to_owned(),
        "sweep_residual".to_owned(),
    ];
    header.extend(agent_ids.iter().map(|id| format!("s_{id}")));
    w.write_record(&header).map_err(out_err)?;
    for rec in &report.trace {
        let residual = report.sweeps[rec.sweep].clearing_residual;
        let mut row = vec![
            rec.sweep.to_string(),
            labels[rec.good].clone(),
            rec.old_price.to_string(),
            rec.new_price.to_string(),
            residual.to_string(),
        ];
        row.extend(rec.holdings.iter().map(f64::to_string));
        w.write_record(&row).map_err(out_err)?;
    }
    w.flush().map_err(|e| CliError::Output(e.to_string()))
}

fn out_err(e: csv::Error) -> CliError {
    CliError::Output(e.to_string())
}
