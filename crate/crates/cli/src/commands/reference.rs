use slowperc_core::codec::{encode, parse, serialize, ParseMode};

use super::{emit, read_figure};
use crate::error::{read_to_string, CliError, Result};
use crate::ReferenceArgs;

pub const PREAMBLE: &str = "Below is a rough sketch of the figure, produced by an automatic parser.";
pub const CAVEAT: &str = "The sketch only approximates how points and lines relate to each other; \
positions may be off and some elements may be missing or spurious. \
Use it as a hint for locating elements, and base the answer on the original image.";

/// Prompt text around a serialized sequence.
pub fn compose_reference(sequence_text: &str) -> String {
    let body = sequence_text.trim_end_matches('\n');
    format!("{PREAMBLE}\n\n<sketch>\n{body}\n</sketch>\n\n{CAVEAT}\n")
}

pub fn run(args: &ReferenceArgs) -> Result<()> {
    let is_json = args.figure.extension().is_some_and(|e| e == "json");
    let text = if is_json {
        serialize(&encode(&read_figure(&args.figure)?, args.ruler))
    } else {
        let raw = read_to_string(&args.figure)?;
        let parsed = parse(&raw, args.ruler, ParseMode::Lenient).map_err(CliError::data)?;
        serialize(&parsed.sequence)
    };
    emit(args.out.as_deref(), &compose_reference(&text))
}
