use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use hologen_core::algorithms::{CancelFlag, Progress};
use hologen_core::controller::{
    configure_run, execute, load_illumination, load_manifest, load_target, run_batch, save_outputs, ControllerError,
};
use hologen_core::hierarchy::{build_schema, OptionTree, OptionValue};
use hologen_core::image::{render, ColorScheme, ImageScaleType, ImageViewType, TransformType, ViewKey};
use hologen_core::serialio::{deserialize_params, export_png, inspect_field, load_field, serialize_params, SerialError};

/// Base seed for batch jobs that leave their seed automatic.
const BATCH_BASE_SEED: u64 = 0;

#[derive(Parser)]
#[command(name = "hologen", version, about = "Computer-generated hologram synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a hologram for a target image.
    Generate(GenerateArgs),
    /// Run a manifest of generation jobs.
    Batch(BatchArgs),
    /// Render a field file to PNG.
    Export(ExportArgs),
    /// Print the header and metadata of a field file.
    Info(InfoArgs),
    /// Print the parameter schema or validate a parameter file.
    Params(ParamsArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Target image (PNG); colour is converted to luminance.
    #[arg(long)]
    target: PathBuf,
    /// Parameter file; values not present keep their defaults.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Parameter override `path=value`; may be repeated.
    #[arg(long = "set", value_name = "PATH=VALUE")]
    set: Vec<String>,
    /// Output field file.
    #[arg(long)]
    out: PathBuf,
    /// Also write the replay-field intensity as PNG.
    #[arg(long, value_name = "PNG")]
    export_replay: Option<PathBuf>,
}

#[derive(Args)]
struct BatchArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value = "amplitude")]
    view: String,
    #[arg(long, default_value = "none")]
    transform: String,
    #[arg(long, default_value = "gray")]
    colormap: String,
    #[arg(long, default_value = "linear")]
    scale: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct InfoArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["schema", "validate"])))]
struct ParamsArgs {
    /// Print the default parameter file.
    #[arg(long)]
    schema: bool,
    /// Validate a parameter file (`-` reads standard input).
    #[arg(long, value_name = "FILE")]
    validate: Option<String>,
}

/// A failed command: message for standard error plus exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(message: impl std::fmt::Display) -> Self {
        Self {
            code: 1,
            message: message.to_string(),
        }
    }

    fn runtime(message: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<ControllerError> for Failure {
    fn from(e: ControllerError) -> Self {
        if e.is_validation() {
            Failure::validation(e)
        } else {
            Failure::runtime(e)
        }
    }
}

impl From<SerialError> for Failure {
    fn from(e: SerialError) -> Self {
        match e {
            SerialError::MalformedJson(_)
            | SerialError::UnknownKey { .. }
            | SerialError::VersionMismatch { .. }
            | SerialError::Hierarchy(_) => Failure::validation(e),
            _ => Failure::runtime(e),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn install_interrupt(cancel: &CancelFlag) {
    let flag = cancel.clone();
    if let Err(e) = ctrlc::set_handler(move || flag.cancel()) {
        log::warn!("cannot install interrupt handler: {e}");
    }
}

fn build_tree(params: Option<&Path>, sets: &[String]) -> Result<OptionTree, Failure> {
    let schema = build_schema();
    let mut tree = match params {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::runtime(format!("cannot read {}: {e}", path.display())))?;
            deserialize_params(&text, &schema)?
        }
        None => schema,
    };
    let mut pairs: Vec<(String, OptionValue)> = Vec::with_capacity(sets.len());
    for item in sets {
        let (path, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::validation(format!("--set expects PATH=VALUE, got '{item}'")))?;
        let value = tree
            .parse_value(path, value)
            .map_err(Failure::validation)?;
        pairs.push((path.to_string(), value));
    }
    tree.apply(&pairs).map_err(Failure::validation)?;
    Ok(tree)
}

fn cmd_generate(args: &GenerateArgs) -> CmdResult {
    let tree = build_tree(args.params.as_deref(), &args.set)?;
    let cfg = configure_run(&tree)?;
    let (w, h) = (cfg.width(), cfg.height());
    let target = load_target(&args.target, w, h).map_err(Failure::runtime)?;
    let illumination = match cfg.illumination.as_deref() {
        Some(p) => Some(load_illumination(p, w, h).map_err(Failure::runtime)?),
        None => None,
    };

    let cancel = CancelFlag::new();
    install_interrupt(&cancel);
    let mut progress = |p: &Progress| log::debug!("iteration {}/{}: error {:.6e}", p.iteration, p.total, p.error);
    let exec = execute(&cfg, &target, illumination.as_ref(), &mut progress, &cancel)?;
    if cancel.is_cancelled() {
        log::warn!("interrupted; saving partial result");
    }

    let written = save_outputs(&exec, &args.out)?;
    for p in &written {
        log::info!("wrote {}", p.display());
    }
    if let Some(png) = &args.export_replay {
        let replay = exec.replay(&cfg, illumination.as_ref())?;
        let key = ViewKey {
            view: ImageViewType::Intensity,
            ..ViewKey::default()
        };
        let image = render(&replay, key).map_err(Failure::runtime)?;
        export_png(&image, png)?;
    }

    let r = &exec.report;
    println!(
        "error={:.12e} efficiency={:.12e} runtime_ms={:.3}",
        r.final_error, r.efficiency, r.runtime_ms
    );
    println!("seed={}", r.seed_used);
    Ok(())
}

fn cmd_batch(args: &BatchArgs) -> CmdResult {
    let jobs = load_manifest(&args.manifest)?;
    let cancel = CancelFlag::new();
    install_interrupt(&cancel);
    let summary = run_batch(&jobs, args.workers as usize, &args.out_dir, BATCH_BASE_SEED, &cancel)?;
    println!(
        "total={} succeeded={} failed={}",
        summary.total, summary.succeeded, summary.failed
    );
    if summary.failed > 0 {
        return Err(Failure::runtime(format!(
            "{} of {} jobs failed; see {}",
            summary.failed,
            summary.total,
            summary.results_path.display()
        )));
    }
    Ok(())
}

fn cmd_export(args: &ExportArgs) -> CmdResult {
    let key = ViewKey {
        transform: args.transform.parse::<TransformType>().map_err(Failure::validation)?,
        view: args.view.parse::<ImageViewType>().map_err(Failure::validation)?,
        colormap: args.colormap.parse::<ColorScheme>().map_err(Failure::validation)?,
        scale: args.scale.parse::<ImageScaleType>().map_err(Failure::validation)?,
    };
    let (field, _) = load_field(&args.input)?;
    let image = render(&field, key).map_err(Failure::runtime)?;
    export_png(&image, &args.out)?;
    Ok(())
}

fn cmd_info(args: &InfoArgs) -> CmdResult {
    let info = inspect_field(&args.input)?;
    let m = &info.metadata;
    println!("width={}", info.width);
    println!("height={}", info.height);
    println!("checksum={}", if info.checksum_ok { "OK" } else { "FAIL" });
    println!("checksum_value={:08x}", info.checksum);
    println!("algorithm={}", m.algorithm);
    println!("seed={}", m.seed);
    println!("final_error={:.12e}", m.error_final);
    println!("iterations={}", m.iterations);
    if let Some(frame) = m.frame {
        println!("frame={frame}");
    }
    println!("timestamp={}", m.timestamp);
    println!("app_version={}", m.app_version);
    println!("schema_version={}", m.version);
    if !info.checksum_ok {
        return Err(Failure::runtime("payload checksum mismatch"));
    }
    Ok(())
}

fn cmd_params(args: &ParamsArgs) -> CmdResult {
    let schema = build_schema();
    if args.schema {
        println!("{}", serialize_params(&schema));
        return Ok(());
    }
    let source = args.validate.as_deref().expect("clap enforces one mode");
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::runtime(format!("cannot read standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| Failure::runtime(format!("cannot read {source}: {e}")))?
    };
    let tree = deserialize_params(&text, &schema)?;
    configure_run(&tree)?;
    println!("OK");
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Batch(a) => cmd_batch(a),
        Command::Export(a) => cmd_export(a),
        Command::Info(a) => cmd_info(a),
        Command::Params(a) => cmd_params(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
