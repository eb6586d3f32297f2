use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use multirocket::harness::{self, parse_list, RunOptions};
use multirocket::model::SavedModel;
use multirocket::transform::DEFAULT_NUM_FEATURES;
use multirocket::TransformConfig;

#[derive(Parser)]
#[command(name = "multirocket", version, about = "MultiRocket time series classification on UCR datasets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct PipelineFlags {
    /// Feature budget; the actual count is rounded down to a whole number of combinations.
    #[arg(long, default_value_t = DEFAULT_NUM_FEATURES)]
    num_features: usize,
    #[arg(long, default_value = "base,first_diff")]
    representations: String,
    #[arg(long, default_value = "ppv,mpv,mipv,lspv")]
    pooling: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

impl PipelineFlags {
    fn options(&self, resample: u32) -> multirocket::Result<RunOptions> {
        let transform = TransformConfig {
            target_num_features: self.num_features,
            representations: parse_list(&self.representations)?,
            pooling_ops: parse_list(&self.pooling)?,
            seed: self.seed,
        };
        Ok(RunOptions { transform, threads: self.threads, resample, ..RunOptions::default() })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Train and test on one dataset directory (<root>/<Name>).
    Run {
        dataset_dir: PathBuf,
        /// Resample id; 0 is the archive's own split.
        #[arg(long, default_value_t = 0)]
        resample: u32,
        #[command(flatten)]
        flags: PipelineFlags,
        #[arg(long, default_value = "results.csv")]
        out: PathBuf,
    },
    /// Run many datasets and resamples, resuming from an existing results file.
    Benchmark {
        #[arg(long)]
        root: PathBuf,
        /// Comma-separated dataset names, or @file with one name per line.
        #[arg(long)]
        datasets: String,
        /// Number of resamples, run as ids 0..N.
        #[arg(long, default_value_t = 1)]
        resamples: u32,
        #[command(flatten)]
        flags: PipelineFlags,
        #[arg(long, default_value = "results.csv")]
        out: PathBuf,
    },
    /// Fit on the training split and save the model.
    Fit {
        dataset_dir: PathBuf,
        /// Resample id; 0 is the archive's own split.
        #[arg(long, default_value_t = 0)]
        resample: u32,
        #[command(flatten)]
        flags: PipelineFlags,
        #[arg(long)]
        save: PathBuf,
    },
    /// Predict the test split of a dataset with a saved model.
    Predict {
        dataset_dir: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 0)]
        resample: u32,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Write one predicted label per line.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn dataset_names(spec: &str) -> multirocket::Result<Vec<String>> {
    let text = match spec.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)?,
        None => spec.replace(',', "\n"),
    };
    Ok(text.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::to_owned).collect())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> multirocket::Result<ExitCode> {
    match cli.command {
        Command::Run { dataset_dir, resample, flags, out } => {
            let outcome = harness::cmd_run(&dataset_dir, &flags.options(resample)?, Some(&out))?;
            let r = &outcome.record;
            println!(
                "{} resample {}: {} features, train acc {:.4}, test acc {:.4}, {:.2}s",
                r.dataset,
                r.resample,
                r.num_features,
                r.acc_train,
                r.acc_test,
                r.t_fit + r.t_apply_train + r.t_apply_test + r.t_clf + r.t_pred
            );
        }
        Command::Benchmark { root, datasets, resamples, flags, out } => {
            let names = dataset_names(&datasets)?;
            let ids: Vec<u32> = (0..resamples).collect();
            let summary = harness::cmd_benchmark(&root, &names, &ids, &flags.options(0)?, &out, |r| {
                println!("{},{},{:.4}", r.dataset, r.resample, r.acc_test)
            })?;
            for (name, id, err) in &summary.failures {
                eprintln!("failed {name} resample {id}: {err}");
            }
            println!(
                "runs {} skipped {} failed {} mean test accuracy {} wall time {:.2}s",
                summary.completed.len(),
                summary.skipped,
                summary.failures.len(),
                summary.mean_test_accuracy().map_or("n/a".into(), |a| format!("{a:.4}")),
                summary.wall_time.as_secs_f64()
            );
            if !summary.succeeded() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Fit { dataset_dir, resample, flags, save } => {
            let model = harness::cmd_fit(&dataset_dir, &flags.options(resample)?, &save)?;
            println!("saved {} features to {}", model.transform.num_features(), save.display());
        }
        Command::Predict { dataset_dir, model, resample, threads, output } => {
            let model = SavedModel::load(&model)?;
            let (root, name) = harness::split_dataset_dir(&dataset_dir)?;
            let (_, test) = harness::load_resampled(&root, &name, resample)?;
            let predicted = harness::predict_with(&model, &test, threads)?;
            let truth: Vec<&str> = test.labels().iter().map(|&l| test.class_names()[l].as_str()).collect();
            let hits = predicted.iter().zip(&truth).filter(|(p, t)| p == t).count();
            if let Some(path) = output {
                fs::write(path, predicted.join("\n") + "\n")?;
            }
            println!("{name}: test accuracy {:.4} ({hits}/{})", hits as f64 / truth.len() as f64, truth.len());
        }
    }
    Ok(ExitCode::SUCCESS)
}
