use std::io::{BufRead, BufReader};
use std::path::Path;

use reaction_lens::lexicon_io::load_lexicon_with_fields;

use super::Tokenizer;
use crate::config::{required, PredictSettings};
use crate::error::{CliError, CliResult};
use crate::io::{open_input, write_output};

/// One line per message: the components, then the word coverage, e.g.
/// `0.5,0.5,0,0,0 coverage=1.0`.
pub fn predict(settings: PredictSettings) -> CliResult<()> {
    let lexicon_path = required(settings.lexicon.as_deref(), "lexicon")?;
    let file = std::fs::File::open(lexicon_path).map_err(CliError::io(lexicon_path))?;
    let (lexicon, _) = load_lexicon_with_fields(BufReader::new(file), None)?;
    let tokenizer = Tokenizer::new(!settings.no_clean.unwrap_or(false), settings.stopwords.as_deref())?;
    let input = settings.input.as_deref().unwrap_or(Path::new("-"));
    let source = BufReader::new(open_input(input)?);

    write_output(settings.output.as_deref(), |sink| {
        let mut line_out = String::new();
        for line in source.lines() {
            let line = line.map_err(CliError::io(input))?;
            let tokens = tokenizer.tokens(&line);
            let p = lexicon.predict(tokens.iter().map(String::as_str))?;
            line_out.clear();
            for (i, v) in p.vector.values().iter().enumerate() {
                if i > 0 {
                    line_out.push(',');
                }
                line_out.push_str(&v.to_string());
            }
            writeln!(sink, "{line_out} coverage={:?}", p.coverage).map_err(CliError::io("<output>"))?;
        }
        Ok(())
    })
}
