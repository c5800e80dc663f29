use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slowperc_core::codec::{collapse, encode as encode_figure, jitter_sequence, parse, serialize, ParseMode};

use super::{emit, read_figure};
use crate::error::{read_to_string, CliError, Result};
use crate::{DecodeArgs, EncodeArgs};

pub fn encode(args: &EncodeArgs) -> Result<()> {
    if !(0.0..=0.1).contains(&args.jitter) {
        return Err(CliError::Usage(format!("--jitter {} outside [0, 0.1]", args.jitter)));
    }
    let fig = read_figure(&args.figure)?;
    let mut seq = encode_figure(&fig, args.ruler);
    if args.jitter > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        seq = jitter_sequence(&seq, &mut rng, args.jitter).map_err(CliError::data)?;
    }
    emit(args.out.as_deref(), &serialize(&seq))
}

pub fn decode(args: &DecodeArgs) -> Result<()> {
    let text = read_to_string(&args.sequence)?;
    let mode = args.mode.mode();
    let parsed = parse(&text, args.ruler, mode).map_err(CliError::data)?;
    let (fig, more) = collapse(&parsed.sequence);
    let diags: Vec<_> = parsed.diagnostics.into_iter().chain(more).collect();
    if mode == ParseMode::Strict {
        if let Some(d) = diags.first() {
            return Err(CliError::data(&d.reason));
        }
    }
    for d in &diags {
        match d.line {
            Some(l) => eprintln!("dropped statement {} (line {l}): {}", d.statement, d.reason),
            None => eprintln!("dropped statement {}: {}", d.statement, d.reason),
        }
    }
    let json = serde_json::to_string_pretty(&fig).map_err(CliError::data)?;
    emit(args.out.as_deref(), &(json + "\n"))
}
