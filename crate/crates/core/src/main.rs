use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lflab::harness::{self, Mode, ScanOrder, SweepConfig, DEFAULT_ALPHA_COUNT};
use lflab::{
    codec, load_light_field, ppm, render_focal_stack, save_light_field, Error, LightField,
};

const DEFAULT_PATTERN: &str = "{row:02}_{col:02}.ppm";

#[derive(Parser)]
#[command(name = "lflab", version, about = "Light-field codec, refocusing and RD harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a light field into an LFJ1 bitstream.
    Encode {
        #[arg(long)]
        manifest: PathBuf,
        /// 2d, 3d or 4d
        #[arg(long)]
        mode: Mode,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=100))]
        quality: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decode an LFJ1 bitstream into PPM views plus manifest.json.
    Decode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value = "decoded")]
        name: String,
        #[arg(long, default_value = DEFAULT_PATTERN)]
        pattern: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        disparity_min: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        disparity_max: f64,
    },
    /// Render a focal stack, one PPM per alpha.
    Refocus {
        #[arg(long)]
        manifest: PathBuf,
        /// Comma-separated, strictly increasing focal parameters.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        alpha: Vec<f64>,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Rate-distortion sweep; CSV columns mode,quality,bpp,psnr_mean.
    Sweep {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "2d,3d,4d")]
        modes: Vec<Mode>,
        #[arg(long, value_delimiter = ',', default_value = "10,30,50,70,90",
              value_parser = clap::value_parser!(u8).range(1..=100))]
        qualities: Vec<u8>,
        #[arg(long, default_value_t = DEFAULT_ALPHA_COUNT)]
        alpha_count: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Direct vs rendered PSNR of the 4D codec.
    Exp0 {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "10,30,50,70,90",
              value_parser = clap::value_parser!(u8).range(1..=100))]
        qualities: Vec<u8>,
        #[arg(long, default_value_t = DEFAULT_ALPHA_COUNT)]
        alpha_count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the views as a YUV4MPEG2 pseudo-sequence.
    Y4mExport {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, default_value = "spiral")]
        order: ScanOrder,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rebuild a light field from a YUV4MPEG2 pseudo-sequence.
    Y4mImport {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value = "spiral")]
        order: ScanOrder,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value = "imported")]
        name: String,
        #[arg(long, default_value = DEFAULT_PATTERN)]
        pattern: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        disparity_min: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        disparity_max: f64,
    },
}

enum Failure {
    Usage(String),
    Processing(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Processing(e)
    }
}

fn require(path: &Path) -> Result<(), Failure> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Failure::Usage(format!("no such file: {}", path.display())))
    }
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Processing(Error::Io { path: path.into(), source: e }))
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    require(path)?;
    fs::read(path).map_err(|e| Failure::Processing(Error::Io { path: path.into(), source: e }))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(manifest: &Path) -> Result<LightField, Failure> {
    require(manifest)?;
    Ok(load_light_field(manifest)?)
}

fn with_disparity(lf: LightField, min: f64, max: f64) -> Result<LightField, Failure> {
    let (rows, cols) = (lf.grid_rows(), lf.grid_cols());
    let views = lf.views().to_vec();
    Ok(LightField::new(rows, cols, views, min, max)?)
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Processing(Error::Io { path: dir.into(), source: e }))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Encode { manifest, mode, quality, out } => {
            let lf = load(&manifest)?;
            let stream = codec::encode(&lf, mode.config(quality)?)?;
            write(&out, stream.to_bytes())?;
            eprintln!(
                "{} bytes, {} bpp",
                stream.byte_len(),
                harness::fmt_g6(codec::bits_per_pixel(&stream, stream.header.dims()))
            );
        }
        Command::Decode { input, out_dir, name, pattern, disparity_min, disparity_max } => {
            let stream = codec::EncodedStream::from_bytes(&read(&input)?)?;
            let lf = with_disparity(codec::decode(&stream)?, disparity_min, disparity_max)?;
            create_dir(&out_dir)?;
            save_light_field(&lf, &out_dir, &name, &pattern)?;
        }
        Command::Refocus { manifest, alpha, out_dir } => {
            let lf = load(&manifest)?;
            let stack = render_focal_stack(&lf.to_planar::<f64>(), &alpha)?;
            create_dir(&out_dir)?;
            for (i, r) in stack.views().iter().enumerate() {
                let view = lflab::View::new(r.width, r.height, r.to_rgb8())?;
                write(&out_dir.join(format!("focus_{i:03}.ppm")), ppm::write_ppm(&view))?;
            }
        }
        Command::Sweep { manifest, modes, qualities, alpha_count, out } => {
            let lf = load(&manifest)?;
            let cfg = SweepConfig { modes, qualities, alpha_count, output: out.clone() };
            let csv = harness::rd_csv(&harness::rd_sweep_field(&lf, &cfg)?);
            emit(out.as_deref(), &csv)?;
        }
        Command::Exp0 { manifest, qualities, alpha_count, out } => {
            let lf = load(&manifest)?;
            let csv = harness::experiment0_csv(&harness::experiment0_points(&lf, &qualities, alpha_count)?);
            emit(out.as_deref(), &csv)?;
        }
        Command::Y4mExport { manifest, order, out } => {
            let lf = load(&manifest)?;
            write(&out, harness::export_y4m(&lf, order))?;
        }
        Command::Y4mImport {
            input,
            rows,
            cols,
            order,
            out_dir,
            name,
            pattern,
            disparity_min,
            disparity_max,
        } => {
            let lf = harness::import_y4m(&read(&input)?, rows, cols, order)?;
            let lf = with_disparity(lf, disparity_min, disparity_max)?;
            create_dir(&out_dir)?;
            save_light_field(&lf, &out_dir, &name, &pattern)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("lflab: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Processing(e)) => {
            eprintln!("lflab: {e}");
            ExitCode::from(1)
        }
    }
}
