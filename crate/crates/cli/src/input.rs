use std::io::Read;
use std::path::PathBuf;

use clap::Args;
use num_rational::BigRational;
use sldkit::graph::{self, Family, Graph};
use sldkit::pauli::{self, Logical, StabilizerGroup};
use sldkit::{closed_forms, sld as engine, Limits, Sld};

use crate::{CliError, CliResult, Method};

#[derive(Args, Debug, Default)]
pub struct SourceArgs {
    /// Graph in graph6 format
    #[arg(long)]
    pub graph6: Option<String>,
    /// Edge-list file: one `i j [w]` per line, 1-based
    #[arg(long)]
    pub edges: Option<PathBuf>,
    /// Graph file in JSON, graph6 or edge-list form (auto-detected)
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Read a graph (any supported form) from standard input
    #[arg(long)]
    pub stdin: bool,
    /// Named family: edgeless, complete, star, ghz, path, cycle, pusteblume,
    /// grid2d, grid3d, rc4, w, surface
    #[arg(long)]
    pub family: Option<String>,
    /// SLD JSON document
    #[arg(long)]
    pub sld: Option<PathBuf>,
    /// Stabilizer generators, one operator per line
    #[arg(long)]
    pub generators: Option<PathBuf>,
    /// Number of sites
    #[arg(long)]
    pub n: Option<usize>,
    /// Local dimension
    #[arg(long, default_value_t = 2)]
    pub d: u32,
    /// Surface-code distance
    #[arg(long)]
    pub distance: Option<usize>,
    /// Surface-code logical state: zero, one, plus, minus
    #[arg(long, default_value = "zero")]
    pub logical: String,
    /// Grid rows
    #[arg(long)]
    pub rows: Option<usize>,
    /// Grid columns
    #[arg(long)]
    pub cols: Option<usize>,
    /// Third grid dimension
    #[arg(long)]
    pub depth: Option<usize>,
}

impl SourceArgs {
    pub fn has_source(&self) -> bool {
        self.graph6.is_some()
            || self.edges.is_some()
            || self.graph.is_some()
            || self.stdin
            || self.family.is_some()
            || self.sld.is_some()
            || self.generators.is_some()
    }
}

/// A parsed input, before any distribution has been computed.
pub enum Resolved {
    Graph {
        graph: Graph,
        family: Option<Family>,
    },
    W(usize),
    Surface(usize, Logical),
    Group(StabilizerGroup),
    Sld(Sld),
    /// A distribution to check against a graph.
    Pair(Sld, Box<Resolved>),
}

fn read_file(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn need<T>(value: Option<T>, what: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Input(format!("missing --{what}")))
}

/// Picks out the single input source. With `allow_pair`, an SLD document
/// may be combined with one graph source.
pub fn resolve(args: &SourceArgs, allow_pair: bool) -> CliResult<Resolved> {
    let graph_sources = [
        args.graph6.is_some(),
        args.edges.is_some(),
        args.graph.is_some(),
        args.stdin,
        args.family.is_some(),
        args.generators.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    let has_sld = args.sld.is_some();
    let total = graph_sources + has_sld as usize;
    if total == 0 {
        return Err(CliError::Input(
            "no input: give one of --graph6, --edges, --graph, --stdin, --family, --sld, --generators".into(),
        ));
    }
    if total > 1 && !(allow_pair && has_sld && graph_sources == 1) {
        return Err(CliError::Input("give exactly one input source".into()));
    }
    if let Some(path) = &args.sld {
        let sld = Sld::from_json(&read_file(path)?)?;
        if graph_sources == 1 {
            let other = resolve_graph(args)?;
            return Ok(Resolved::Pair(sld, Box::new(other)));
        }
        return Ok(Resolved::Sld(sld));
    }
    resolve_graph(args)
}

fn resolve_graph(args: &SourceArgs) -> CliResult<Resolved> {
    let plain = |graph: Graph| Resolved::Graph { graph, family: None };
    if let Some(text) = &args.graph6 {
        return Ok(plain(graph::parse_graph6(text)?));
    }
    if let Some(path) = &args.edges {
        let text = read_file(path)?;
        return Ok(plain(edge_list(&text, args)?));
    }
    if let Some(path) = &args.graph {
        return Ok(plain(detect(&read_file(path)?, args)?));
    }
    if args.stdin {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        return Ok(plain(detect(&text, args)?));
    }
    if let Some(path) = &args.generators {
        return Ok(Resolved::Group(pauli::parse_generators(&read_file(path)?, args.d)?));
    }
    let name = args.family.as_deref().unwrap_or_default();
    family(name, args)
}

fn edge_list(text: &str, args: &SourceArgs) -> CliResult<Graph> {
    let n = match args.n {
        Some(n) => n,
        None => infer_vertex_count(text),
    };
    Ok(graph::parse_edge_list(text, n, args.d)?)
}

/// Largest vertex label among the first two fields of every line.
fn infer_vertex_count(text: &str) -> usize {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace().take(2))
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(0)
}

fn detect(text: &str, args: &SourceArgs) -> CliResult<Graph> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return Ok(graph::parse_graph_json(text)?);
    }
    let first = trimmed.lines().find(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let looks_like_edges = first.is_some_and(|l| l.split_whitespace().count() >= 2)
        || trimmed.starts_with('#');
    if looks_like_edges {
        edge_list(text, args)
    } else {
        Ok(graph::parse_graph6(trimmed)?)
    }
}

fn family(name: &str, args: &SourceArgs) -> CliResult<Resolved> {
    let d = args.d;
    let fam = match name {
        "w" => return Ok(Resolved::W(need(args.n, "n")?)),
        "surface" => {
            let logical = args.logical.parse()?;
            return Ok(Resolved::Surface(need(args.distance, "distance")?, logical));
        }
        "edgeless" => Family::Edgeless,
        "complete" => Family::Complete,
        "star" | "ghz" => Family::Star,
        "path" => Family::Path,
        "cycle" | "ring" | "rcl" => Family::Cycle,
        "pusteblume" => Family::Pusteblume,
        "grid2d" => Family::Grid2d(need(args.rows, "rows")?, need(args.cols, "cols")?),
        "grid3d" => Family::Grid3d(
            need(args.rows, "rows")?,
            need(args.cols, "cols")?,
            need(args.depth, "depth")?,
        ),
        "rc4" => Family::Rc4,
        other => return Err(CliError::Input(format!("unknown family {other:?}"))),
    };
    let n = match fam {
        Family::Grid2d(..) | Family::Grid3d(..) | Family::Rc4 => args.n.unwrap_or(0),
        _ => need(args.n, "n")?,
    };
    if n > 1_000_000 {
        return Err(CliError::Resource(format!("family size n = {n} is too large")));
    }
    // closed forms reach far beyond what a dense adjacency matrix can hold
    let graph = if n > 4096 {
        None
    } else {
        Some(graph::make_family(fam, n, d)?)
    };
    match graph {
        Some(graph) => Ok(Resolved::Graph {
            graph,
            family: Some(fam),
        }),
        None => Err(CliError::Resource(format!(
            "family size n = {n} exceeds the 4096-vertex graph limit"
        ))),
    }
}

/// Computes the distribution with the requested method; returns the method
/// actually used.
pub fn compute_sld(input: &Resolved, method: Method, limits: &Limits) -> CliResult<(Sld, &'static str)> {
    let unsupported = |what: &str| CliError::Input(format!("method not available for {what}"));
    match input {
        Resolved::Sld(sld) => match method {
            Method::Auto => Ok((sld.clone(), "input")),
            _ => Err(unsupported("an SLD document")),
        },
        Resolved::Pair(sld, _) => Ok((sld.clone(), "input")),
        Resolved::W(n) => match method {
            Method::Auto | Method::Closed => Ok((closed_forms::sld_w_state(*n)?, "closed")),
            Method::Statevector => {
                let amps = engine::w_state_amplitudes(*n)?;
                Ok((engine::statevector_sld(&amps, 2, limits)?, "statevector"))
            }
            _ => Err(unsupported("the W state")),
        },
        Resolved::Surface(distance, logical) => match method {
            Method::Auto | Method::Group => {
                let group = pauli::rotated_surface_code_logical_generators(*distance, *logical)?;
                Ok((pauli::group_weight_distribution(&group, limits)?, "group"))
            }
            _ => Err(unsupported("the surface code")),
        },
        Resolved::Group(group) => match method {
            Method::Auto | Method::Group => Ok((pauli::group_weight_distribution(group, limits)?, "group")),
            _ => Err(unsupported("a generator list")),
        },
        Resolved::Graph { graph, family, .. } => {
            let closed = family.and_then(|f| closed_forms::family_sld(f, graph.n(), graph.d()));
            match method {
                Method::Auto => match closed {
                    Some(sld) => Ok((sld?, "closed")),
                    None => Ok((engine::graph_sld(graph, limits)?, "brute")),
                },
                Method::Closed => match closed {
                    Some(sld) => Ok((sld?, "closed")),
                    None => Err(unsupported("this graph (no closed form)")),
                },
                Method::Brute => Ok((engine::graph_sld(graph, limits)?, "brute")),
                Method::Group => {
                    let group = pauli::graph_stabilizer_generators(graph);
                    Ok((pauli::group_weight_distribution(&group, limits)?, "group"))
                }
                Method::Statevector => {
                    let amps = engine::graph_state_amplitudes(graph, limits)?;
                    Ok((engine::statevector_sld(&amps, graph.d(), limits)?, "statevector"))
                }
            }
        }
    }
}

/// Accepts `p/q`, plain decimals (read exactly), or any float syntax.
pub fn parse_probability(text: &str) -> CliResult<BigRational> {
    let bad = || CliError::Input(format!("cannot read probability {text:?}"));
    if let Some(q) = sldkit::arith::parse_rational(text) {
        return Ok(q);
    }
    if let Some((whole, frac)) = text.trim().split_once('.') {
        let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if digits(whole) && digits(frac) && !(whole.is_empty() && frac.is_empty()) {
            let num = format!("{whole}{frac}");
            let den = format!("1{}", "0".repeat(frac.len()));
            return sldkit::arith::parse_rational(&format!("{num}/{den}")).ok_or_else(bad);
        }
    }
    let x: f64 = text.trim().parse().map_err(|_| bad())?;
    if !x.is_finite() {
        return Err(bad());
    }
    Ok(sldkit::arith::from_f64(x))
}
