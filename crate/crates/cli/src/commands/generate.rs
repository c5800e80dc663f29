use std::fs::File;
use std::io::{BufWriter, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use slowperc_core::codec::{encode, jitter_sequence, serialize};
use slowperc_core::generate::{generate_sample, sub_seed, GenConfig};
use slowperc_core::render::{encode_png, perturb_image, render_raster, render_vector, Perturbation};

use crate::dataset::{record_id, DatasetRecord, Split};
use crate::error::{create_dir_all, read_to_string, write, CliError, Result};
use crate::GenerateArgs;

pub const DATASET_FILE: &str = "dataset.jsonl";
pub const CONFIG_FILE: &str = "config.toml";
pub const IMAGE_DIR: &str = "images";

const JITTER_STREAM: u64 = u64::MAX - 2;
const PERTURB_STREAM: u64 = u64::MAX - 3;
/// Samples built in parallel before their outputs are written in order.
const CHUNK: u64 = 256;

struct Built {
    record: DatasetRecord,
    png: Vec<u8>,
    svg: Option<String>,
}

pub fn load_config(args: &GenerateArgs) -> Result<GenConfig> {
    let mut cfg: GenConfig = match &args.config {
        Some(p) => toml::from_str(&read_to_string(p)?).map_err(|e| CliError::data(format!("{}: {e}", p.display())))?,
        None => GenConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    cfg.validate().map_err(CliError::data)?;
    Ok(cfg)
}

fn build(cfg: &GenConfig, args: &GenerateArgs, index: u64) -> Result<Built> {
    let sample = generate_sample(cfg, index).map_err(CliError::data)?;
    let mut seq = encode(&sample.figure, args.ruler);
    if args.jitter > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.seed, index, JITTER_STREAM));
        seq = jitter_sequence(&seq, &mut rng, args.jitter).map_err(CliError::data)?;
    }
    let mut img = render_raster(&sample.figure, &sample.render);
    if args.perturb {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.seed, index, PERTURB_STREAM));
        img = perturb_image(&img, &Perturbation::default(), &mut rng);
    }
    let png = encode_png(&img).map_err(CliError::data)?;
    let svg = args.svg.then(|| render_vector(&sample.figure, &sample.render));
    let id = record_id(index);
    Ok(Built {
        record: DatasetRecord {
            image_path: format!("{IMAGE_DIR}/{id}.png"),
            id,
            sequence: serialize(&seq),
            ruler: args.ruler,
            split: Split::assign(cfg.seed, index),
            render: sample.render,
        },
        png,
        svg,
    })
}

pub fn run(args: &GenerateArgs) -> Result<()> {
    if !(0.0..=0.1).contains(&args.jitter) {
        return Err(CliError::Usage(format!("--jitter {} outside [0, 0.1]", args.jitter)));
    }
    let cfg = load_config(args)?;
    let pool = super::pool(args.workers)?;
    let images = args.out.join(IMAGE_DIR);
    create_dir_all(&images)?;
    let cfg_text = toml::to_string(&cfg).map_err(CliError::data)?;
    write(&args.out.join(CONFIG_FILE), cfg_text)?;

    let jsonl_path = args.out.join(DATASET_FILE);
    let file = File::create(&jsonl_path).map_err(CliError::io(&jsonl_path))?;
    let mut jsonl = BufWriter::new(file);
    let mut start = 0;
    while start < args.count {
        let end = (start + CHUNK).min(args.count);
        let built: Vec<Result<Built>> = pool.install(|| (start..end).into_par_iter().map(|i| build(&cfg, args, i)).collect());
        for b in built {
            let b = b?;
            write(&args.out.join(&b.record.image_path), &b.png)?;
            if let Some(svg) = &b.svg {
                write(&images.join(format!("{}.svg", b.record.id)), svg)?;
            }
            let line = serde_json::to_string(&b.record).map_err(CliError::data)?;
            writeln!(jsonl, "{line}").map_err(CliError::io(&jsonl_path))?;
        }
        start = end;
    }
    jsonl.flush().map_err(CliError::io(&jsonl_path))?;
    eprintln!("wrote {} records to {}", args.count, jsonl_path.display());
    Ok(())
}
