use std::io::Write;

use reaction_lens::{CorpusStats, Reaction, StatsAccumulator};

use super::{column_map, corpus_format, for_each_record};
use crate::config::{required, StatsSettings};
use crate::error::{CliError, CliResult};
use crate::io::write_output;

pub fn stats(settings: StatsSettings) -> CliResult<()> {
    let input = required(settings.input.as_deref(), "input")?;
    let map = column_map(settings.columns.as_deref())?;
    let mut acc = StatsAccumulator::default();
    for_each_record(input, corpus_format(settings.format, input), &map, None, |record| {
        acc.add(&record.reactions);
        Ok(())
    })?;
    let stats = acc.finish();
    write_output(settings.output.as_deref(), |sink| {
        if settings.json.unwrap_or(false) {
            serde_json::to_writer_pretty(&mut *sink, &stats)?;
            writeln!(sink).map_err(CliError::io("<output>"))
        } else {
            write_table(&stats, sink).map_err(CliError::io("<output>"))
        }
    })
}

fn percent(share: Option<f64>) -> String {
    share.map_or_else(|| "-".to_owned(), |p| format!("{p:.3}"))
}

/// Counts with their share of all reactions and of the core reactions.
pub fn write_table(stats: &CorpusStats, sink: &mut dyn Write) -> std::io::Result<()> {
    writeln!(sink, "{:<10} {:>14} {:>9} {:>9}", "reaction", "count", "all%", "core%")?;
    for r in Reaction::ALL {
        writeln!(
            sink,
            "{:<10} {:>14} {:>9} {:>9}",
            r.name(),
            stats.totals.get(r),
            percent(stats.all_share(r)),
            percent(stats.core_share(r)),
        )?;
    }
    let total: u64 = stats.totals.as_array().iter().sum();
    writeln!(sink, "{:<10} {:>14}", "total", total)?;
    writeln!(sink, "{:<10} {:>14}", "rows", stats.rows)
}
