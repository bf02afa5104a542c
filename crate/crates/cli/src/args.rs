use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

/// Certified robustness of quantum classifiers under bit-flip smoothing.
///
/// Every run writes a JSON manifest next to its outputs. Worker threads are
/// set by QSMOOTH_THREADS (default: all cores).
#[derive(Debug, Parser)]
#[command(name = "qsmooth", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Train a classifier on a binarized dataset.
    Train(TrainArgs),
    /// Certify the test split along the sampling or amplitude-estimation path.
    Certify(CertifyArgs),
    /// Write the smoothing law around one input.
    Distribution(DistributionArgs),
    /// Encode a UCR file as Bag-of-Words bitstrings.
    Bow(BowArgs),
    /// Re-run the command recorded in a manifest and check its outputs.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dataset {
    Iris,
    Gunpoint,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct DataArgs {
    #[arg(long, value_enum)]
    pub dataset: Dataset,
    /// Holds iris.csv and GunPoint/GunPoint_{TRAIN,TEST}.tsv.
    #[arg(long, default_value = "data")]
    pub data_dir: PathBuf,
    /// Seed of the Iris train/test split (ignored for GunPoint).
    #[arg(long, default_value_t = 0)]
    pub split_seed: u64,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct TrainArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Must match the input width [default: 3 for iris, 10 for gunpoint].
    #[arg(long)]
    pub qubits: Option<usize>,
    /// [default: 2 for iris, 50 for gunpoint]
    #[arg(long)]
    pub layers: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub output_qubit: usize,
    /// CNOT ring offset of the entangling layers.
    #[arg(long, default_value_t = 1)]
    pub range: usize,
    #[arg(long, default_value_t = 200)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0.1)]
    pub learning_rate: f64,
    /// Mini-batch size; full batch when omitted.
    #[arg(long)]
    pub batch_size: Option<usize>,
    #[arg(long, default_value_t = 0.1)]
    pub init_spread: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Angle table; the shape goes to <stem>.shape.csv and losses to <stem>.loss.csv.
    #[arg(long, default_value = "params.csv")]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathKind {
    Rs,
    Quadro,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistKind {
    /// Exact k-Hamming law.
    Hamming,
    /// Law of the shallow one-ancilla-per-bit circuit.
    HammingCircuit,
    /// Mixture of the point mass and the uniform law.
    Uniform,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, value_enum)]
    pub path: PathKind,
    #[arg(long, value_enum, default_value_t = DistKind::Hamming)]
    pub dist: DistKind,
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    /// Maximum flip distance of the exact Hamming law.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Perturbations per sample on the sampling path.
    #[arg(long, default_value_t = 2500)]
    pub shots: u64,
    /// Phase bits on the amplitude-estimation path.
    #[arg(long, default_value_t = 6)]
    pub m: usize,
    /// Median-of runs on the amplitude-estimation path (odd).
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    #[arg(long, default_value_t = 1)]
    pub shots_per_bit: u64,
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    /// Angle table written by `train`; its shape file must sit beside it.
    #[arg(long, default_value = "params.csv")]
    pub params: PathBuf,
    /// Certify only the first N test samples.
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Exact k-Hamming law.
    Target,
    /// Marginal of the shallow Hamming circuit.
    HammingCircuit,
    /// Marginal of the single-ancilla uniform circuit.
    UniformCircuit,
    /// Marginal of the amplitude-loaded exact law.
    Mottonen,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct DistributionArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    /// Center bitstring, e.g. 011.
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value = "dist.csv")]
    pub out: PathBuf,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct BowArgs {
    /// UCR file: label then values per line.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 15)]
    pub window: usize,
    #[arg(long, default_value_t = 2)]
    pub word: usize,
    #[arg(long, default_value_t = 2)]
    pub bins: usize,
    /// Encode the whole series instead of its first half.
    #[arg(long)]
    pub full_length: bool,
    #[arg(long, default_value = "bits.csv")]
    pub out: PathBuf,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    #[arg(long)]
    pub manifest: PathBuf,
}
