use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use qsmooth::certify::{
    certified_accuracy_curve, write_curve_csv, write_records_csv, CertPath, Certifier,
};
use qsmooth::preprocess::{bow_dataset, iris_binarize, load_iris, load_ucr, BowConfig};
use qsmooth::qnn::{
    evaluate_accuracy, train, Classifier, ClassifierParams, LabeledDataset, TrainConfig,
};
use qsmooth::quadro::QaeConfig;
use qsmooth::smoothing::SmoothingKernel;
use qsmooth::stateprep::{
    hamming_prep_circuit, induced_distribution, mottonen_circuit, target_distribution,
    uniform_prep_circuit, HammingNoiseSpec,
};
use qsmooth::BitString;

use crate::args::{
    BowArgs, CertifyArgs, DataArgs, Dataset, DistKind, DistributionArgs, Method, PathKind,
    TrainArgs,
};
use crate::error::{CliError, CliResult};

/// Files a command read and wrote, plus its named seeds.
#[derive(Debug, Default)]
pub struct Outcome {
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub seeds: BTreeMap<String, u64>,
    pub manifest: PathBuf,
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Data(format!("{}: {e}", dir.display())))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn open(path: &Path) -> CliResult<File> {
    File::open(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// `params.csv` -> `params.<suffix>`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    path.with_extension(suffix)
}

/// Train and test splits plus the files they came from.
fn load_data(args: &DataArgs) -> CliResult<(LabeledDataset, LabeledDataset, Vec<PathBuf>)> {
    match args.dataset {
        Dataset::Iris => {
            let path = args.data_dir.join("iris.csv");
            let rows = load_iris(&path)?;
            let (train, test) = iris_binarize(&rows, args.split_seed)?;
            Ok((train, test, vec![path]))
        }
        Dataset::Gunpoint => {
            let dir = args.data_dir.join("GunPoint");
            let (tr, te) = (
                dir.join("GunPoint_TRAIN.tsv"),
                dir.join("GunPoint_TEST.tsv"),
            );
            let config = BowConfig::default();
            let train = bow_dataset(&load_ucr(&tr)?, &config)?;
            let test = bow_dataset(&load_ucr(&te)?, &config)?;
            Ok((train, test, vec![tr, te]))
        }
    }
}

pub fn run_train(args: &TrainArgs) -> CliResult<Outcome> {
    let (train_set, test_set, inputs) = load_data(&args.data)?;
    let (qubits, layers) = match args.data.dataset {
        Dataset::Iris => (3, 2),
        Dataset::Gunpoint => (10, 50),
    };
    let qubits = args.qubits.unwrap_or(qubits);
    if qubits != train_set.width() {
        return Err(CliError::Config(format!(
            "--qubits {qubits} does not match the {}-bit inputs",
            train_set.width()
        )));
    }
    let config = TrainConfig {
        layers: args.layers.unwrap_or(layers),
        output_qubit: args.output_qubit,
        entangling_range: args.range,
        learning_rate: args.learning_rate,
        epochs: args.epochs,
        batch_size: args.batch_size,
        init_spread: args.init_spread,
        seed: args.seed,
    };
    let (params, log) = train(&config, &train_set)?;
    println!(
        "train accuracy {:.4}, test accuracy {:.4}",
        evaluate_accuracy(&params, &train_set)?,
        evaluate_accuracy(&params, &test_set)?
    );
    let shape = sibling(&args.out, "shape.csv");
    let losses = sibling(&args.out, "loss.csv");
    params.write_angles_csv(create(&args.out)?)?;
    params.write_header_csv(create(&shape)?)?;
    let mut w = create(&losses)?;
    use std::io::Write as _;
    let io = |e: std::io::Error| CliError::Data(format!("{}: {e}", losses.display()));
    writeln!(w, "epoch,loss").map_err(io)?;
    for (epoch, loss) in log.losses.iter().enumerate() {
        writeln!(w, "{epoch},{loss}").map_err(io)?;
    }
    w.flush().map_err(io)?;
    Ok(Outcome {
        inputs,
        outputs: vec![args.out.clone(), shape, losses],
        seeds: BTreeMap::from([
            ("split".to_string(), args.data.split_seed),
            ("train".to_string(), args.seed),
        ]),
        manifest: sibling(&args.out, "manifest.json"),
    })
}

pub fn run_certify(args: &CertifyArgs) -> CliResult<Outcome> {
    let (_, test_set, mut inputs) = load_data(&args.data)?;
    let shape = sibling(&args.params, "shape.csv");
    let params = ClassifierParams::read_csv(open(&shape)?, open(&args.params)?)?;
    inputs.extend([args.params.clone(), shape]);
    let n = test_set.width();
    if params.num_qubits() != n {
        return Err(CliError::Config(format!(
            "classifier has {} qubits but inputs have {n} bits",
            params.num_qubits()
        )));
    }
    let kernel = match args.dist {
        DistKind::Hamming => SmoothingKernel::hamming(n, args.k, args.sigma)?,
        DistKind::HammingCircuit => SmoothingKernel::shallow_circuit(n, args.sigma)?,
        DistKind::Uniform => SmoothingKernel::uniform(n, args.sigma)?,
    };
    let data = match args.limit {
        Some(limit) => test_set.subset(&(0..limit.min(test_set.len())).collect::<Vec<_>>()),
        None => test_set,
    };
    if data.is_empty() {
        return Err(CliError::Config("no test samples selected".into()));
    }
    let certifier = Certifier::new(Classifier::new(params), kernel, args.alpha)?;
    let (records, path) = match args.path {
        PathKind::Rs => (
            certifier.rs_all(&data, args.shots, args.seed)?,
            CertPath::Rs,
        ),
        PathKind::Quadro => {
            let config = QaeConfig {
                m: args.m,
                shots_per_bit: args.shots_per_bit,
                repetitions: args.reps,
                alpha: args.alpha,
                seed: args.seed,
            };
            (certifier.quadro_all(&data, &config)?, CertPath::Quadro)
        }
    };
    let radii: Vec<i64> = (0..=n as i64).collect();
    let curve = certified_accuracy_curve(&records, &radii)?;
    let calls = records[0].oracle_calls;
    let (rec_path, curve_path) = (
        args.out_dir.join("records.csv"),
        args.out_dir.join("curve.csv"),
    );
    write_records_csv(&records, create(&rec_path)?)?;
    write_curve_csv(&curve, path, calls, create(&curve_path)?)?;
    println!(
        "{} samples, {calls} oracle calls each, certified accuracy {:.4} at radius 0",
        records.len(),
        curve[0].1
    );
    Ok(Outcome {
        inputs,
        outputs: vec![rec_path, curve_path],
        seeds: BTreeMap::from([
            ("split".to_string(), args.data.split_seed),
            ("certify".to_string(), args.seed),
        ]),
        manifest: args.out_dir.join("manifest.json"),
    })
}

pub fn run_distribution(args: &DistributionArgs) -> CliResult<Outcome> {
    let x: BitString = args
        .x
        .parse()
        .map_err(|e| CliError::Config(format!("--x: {e}")))?;
    let data: Vec<usize> = (0..x.len()).collect();
    let exact = || -> CliResult<_> {
        Ok(target_distribution(
            &HammingNoiseSpec::new(x.len(), args.k, args.sigma)?,
            &x,
        )?)
    };
    let dist = match args.method {
        Method::Target => exact()?,
        Method::HammingCircuit => {
            induced_distribution(&hamming_prep_circuit(&x, args.sigma)?, &data)?
        }
        Method::UniformCircuit => {
            induced_distribution(&uniform_prep_circuit(&x, args.sigma)?, &data)?
        }
        Method::Mottonen => induced_distribution(&mottonen_circuit(&exact()?)?, &data)?,
    };
    dist.write_csv(create(&args.out)?)?;
    Ok(Outcome {
        outputs: vec![args.out.clone()],
        manifest: sibling(&args.out, "manifest.json"),
        ..Outcome::default()
    })
}

pub fn run_bow(args: &BowArgs) -> CliResult<Outcome> {
    let config = BowConfig {
        window_size: args.window,
        word_size: args.word,
        n_bins: args.bins,
        truncate_to_first_half: !args.full_length,
    };
    config.validate()?;
    let dataset = bow_dataset(&load_ucr(&args.input)?, &config)?;
    dataset.write_csv(create(&args.out)?)?;
    println!("{} rows of {}-bit strings", dataset.len(), dataset.width());
    Ok(Outcome {
        inputs: vec![args.input.clone()],
        outputs: vec![args.out.clone()],
        manifest: sibling(&args.out, "manifest.json"),
        ..Outcome::default()
    })
}
