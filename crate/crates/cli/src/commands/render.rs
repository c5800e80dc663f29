use slowperc_core::render::{encode_png, render_raster, render_vector, LineStyle, RenderConfig};

use super::read_figure;
use crate::error::{write, CliError, Result};
use crate::RenderArgs;

pub fn run(args: &RenderArgs) -> Result<()> {
    let fig = read_figure(&args.figure)?;
    let style = if args.dashed {
        LineStyle::dashed_for(args.line_width)
    } else {
        LineStyle::Solid
    };
    let rc = RenderConfig::new(args.dpi, args.line_width, style).map_err(|e| CliError::Usage(e.to_string()))?;
    match args.out.extension().and_then(|e| e.to_str()) {
        Some("svg") => write(&args.out, render_vector(&fig, &rc)),
        Some("png") => write(&args.out, encode_png(&render_raster(&fig, &rc)).map_err(CliError::data)?),
        _ => Err(CliError::Usage("--out must end in .png or .svg".into())),
    }
}
