//! Seeded corpus generation and the benchmark table.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use oddpath_core::generate::{
    random_conservative, random_grid, random_sparse_single_tree, GraphShape,
};
use oddpath_core::{Vertex, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::format::{parse_graph, write_text, FormatError};
use crate::solve::{diagnostics, solve, Algorithm, SolveError, SolveRequest, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CorpusKind {
    /// Sparse graphs whose negative edges form one tree.
    SingleTree,
    /// Random conservative graphs, any number of negative trees.
    Conservative,
    /// Four-row grids with a negative spanning-forest subset.
    Grid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusInstance {
    pub name: String,
    pub graph: WeightedGraph,
    pub s: Vertex,
    pub t: Vertex,
}

/// Largest negative tree in single-tree corpora. Trees are also capped at
/// a quarter of the vertices; larger trees make random chords almost never
/// conservative.
pub const CORPUS_TREE_EDGES: usize = 20;

/// `count` instances per size, reproducible from `seed`.
pub fn generate_corpus(
    kind: CorpusKind,
    sizes: &[usize],
    count: usize,
    seed: u64,
) -> Vec<CorpusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &n in sizes {
        let n = n.max(2);
        for index in 0..count {
            let graph = match kind {
                CorpusKind::SingleTree => {
                    random_sparse_single_tree(&mut rng, n, n, CORPUS_TREE_EDGES.min(n / 4), 6)
                }
                CorpusKind::Conservative => loop {
                    let shape = GraphShape::new(n, (4.0 / n as f64).min(0.9));
                    if let Some(g) = random_conservative(&mut rng, &shape, 0.3, 50) {
                        break g;
                    }
                },
                CorpusKind::Grid => random_grid(&mut rng, 4, n.div_ceil(4), 6, 0.2),
            };
            let s = rng.gen_range(0..graph.n());
            let t = (s + rng.gen_range(1..graph.n())) % graph.n();
            let label = match kind {
                CorpusKind::SingleTree => "single-tree",
                CorpusKind::Conservative => "conservative",
                CorpusKind::Grid => "grid",
            };
            out.push(CorpusInstance {
                name: format!("{label}-n{n:04}-{index:03}"),
                graph,
                s,
                t,
            });
        }
    }
    out
}

pub fn write_corpus(dir: &Path, instances: &[CorpusInstance]) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for inst in instances {
        let path = dir.join(format!("{}.graph", inst.name));
        std::fs::write(&path, write_text(&inst.graph, Some(inst.s), Some(inst.t)))?;
        paths.push(path);
    }
    Ok(paths)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    pub algorithm: String,
    /// FOUND, INFEASIBLE, GUARD or ERROR.
    pub status: String,
    pub weight: String,
    pub time_ms: f64,
    pub n: usize,
    pub m: usize,
    pub negative_edges: usize,
    pub trees: usize,
    pub matching_size: usize,
    pub width_estimate: usize,
    pub message: String,
}

pub const BENCH_HEADER: [&str; 12] = [
    "instance",
    "algorithm",
    "status",
    "weight",
    "time_ms",
    "n",
    "m",
    "negative_edges",
    "trees",
    "matching_size",
    "width_estimate",
    "message",
];

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{path}: the file names no source and target")]
    MissingTerminals { path: String },
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
}

pub fn bench_instance(
    name: &str,
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    algorithms: &[Algorithm],
    config: &Config,
) -> Vec<BenchRecord> {
    let d = diagnostics(g).ok();
    algorithms
        .iter()
        .map(|&algorithm| {
            let start = Instant::now();
            let result = solve(g, &SolveRequest::new(s, t, algorithm), config);
            let time_ms = start.elapsed().as_secs_f64() * 1e3;
            let (status, weight, algorithm, message) = match result {
                Ok(report) => (
                    match report.status {
                        Status::Found => "FOUND".to_owned(),
                        Status::Infeasible => "INFEASIBLE".to_owned(),
                    },
                    report.weight.unwrap_or_default(),
                    report.algorithm.to_string(),
                    String::new(),
                ),
                Err(e) => {
                    let status = match e {
                        SolveError::Guard(_) | SolveError::NoTractableAlgorithm(_) => "GUARD",
                        _ => "ERROR",
                    };
                    (
                        status.to_owned(),
                        String::new(),
                        algorithm.to_string(),
                        e.to_string(),
                    )
                }
            };
            BenchRecord {
                instance: name.to_owned(),
                algorithm,
                status,
                weight,
                time_ms,
                n: g.n(),
                m: g.m(),
                negative_edges: d.map_or(0, |d| d.negative_edges),
                trees: d.map_or(0, |d| d.trees),
                matching_size: d.map_or(0, |d| d.matching_size),
                width_estimate: d.map_or(0, |d| d.width_estimate),
                message,
            }
        })
        .collect()
}

/// Graph files of a corpus directory (`.graph`, `.txt`, `.json`), by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    let io = |source| BenchError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        let graph_like = matches!(
            path.extension().and_then(|e| e.to_str()),
            Some("graph" | "txt" | "json")
        );
        if path.is_file() && graph_like {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn bench_corpus(
    dir: &Path,
    algorithms: &[Algorithm],
    config: &Config,
) -> Result<Vec<BenchRecord>, BenchError> {
    let mut records = Vec::new();
    for path in corpus_files(dir)? {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(&path).map_err(|source| BenchError::Io {
            path: shown.clone(),
            source,
        })?;
        let file = parse_graph(&text).map_err(|source| BenchError::Format {
            path: shown.clone(),
            source,
        })?;
        let (Some(s), Some(t)) = (file.s, file.t) else {
            return Err(BenchError::MissingTerminals { path: shown });
        };
        let name = path
            .file_stem()
            .map_or(shown.clone(), |stem| stem.to_string_lossy().into_owned());
        records.extend(bench_instance(&name, &file.graph, s, t, algorithms, config));
    }
    Ok(records)
}

/// Writes the header, then one row per record.
pub fn write_csv(records: &[BenchRecord], out: impl Write) -> Result<(), BenchError> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    writer.write_record(BENCH_HEADER)?;
    for record in records {
        writer.serialize(record)?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_gives_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let records = bench_corpus(dir.path(), &[Algorithm::Tree], &Config::default()).unwrap();
        assert!(records.is_empty());
        let mut out = Vec::new();
        write_csv(&records, &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            BENCH_HEADER.join(",") + "\n"
        );
    }

    #[test]
    fn generation_is_reproducible() {
        let a = generate_corpus(CorpusKind::Conservative, &[8, 12], 3, 5);
        let b = generate_corpus(CorpusKind::Conservative, &[8, 12], 3, 5);
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        assert_eq!(a[3].name, "conservative-n0012-000");
    }

    #[test]
    fn algorithms_agree_on_single_tree_corpus() {
        let dir = tempfile::tempdir().unwrap();
        write_corpus(
            dir.path(),
            &generate_corpus(CorpusKind::SingleTree, &[20, 40], 2, 9),
        )
        .unwrap();
        let algorithms = [Algorithm::Tree, Algorithm::FptDerand, Algorithm::Treewidth];
        let records = bench_corpus(dir.path(), &algorithms, &Config::default()).unwrap();
        assert_eq!(records.len(), 12);
        for row in records.chunks(3) {
            assert!(
                row[0].status == "FOUND" || row[0].status == "INFEASIBLE",
                "{row:?}"
            );
            for other in &row[1..] {
                if other.status != "GUARD" {
                    assert_eq!(
                        (&other.status, &other.weight),
                        (&row[0].status, &row[0].weight),
                        "{row:?}"
                    );
                }
            }
        }
    }
}
