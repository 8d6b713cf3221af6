use reaction_lens::{CorpusFormat, CorpusWriter};

use crate::config::SynthSettings;
use crate::error::{CliError, CliResult};
use crate::io::write_output;
use crate::manifest::{manifest_path, RunManifest};
use crate::synth::{Generator, SynthSpec};

pub fn synth(settings: SynthSettings) -> CliResult<()> {
    let spec = SynthSpec::from_settings(&settings)?;
    let mut manifest = RunManifest::start("synth", &spec)?;
    let output = settings.output.as_deref();
    let format = settings
        .format
        .or_else(|| output.map(CorpusFormat::from_path))
        .unwrap_or(CorpusFormat::Csv);
    let generator = Generator::new(spec)?;

    if let Some(path) = settings.truth.as_deref() {
        write_output(Some(path), |sink| generator.write_truth(sink).map_err(CliError::io(path)))?;
        manifest.output(path);
    }
    write_output(output, |sink| {
        let mut writer = CorpusWriter::new(sink, format, true)?;
        for post in generator {
            writer.write(&post)?;
        }
        writer.finish()?;
        Ok(())
    })?;
    if let Some(path) = output {
        manifest.output(path);
    }
    manifest.finish(manifest_path(settings.manifest.as_deref(), output).as_deref())
}
