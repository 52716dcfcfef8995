//! Subcommands and the artifacts they produce.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use cubulate::antitorus::{commuting_powers_search, find_periodic_top, overlap_gamma, AntiTorusError};
use cubulate::complex::{
    canonical_form, enumerate_csc, parse_complex, serialize_complex, validate_csc, CensusError, CensusOptions,
};
use cubulate::develop::{fill_rectangle, CellMode};
use cubulate::obstruction::{obstruction_table, well_separation, ObstructionError};
use cubulate::staircase::{analyze, nonacyl_certificate, StairParams};
use cubulate::{AntiTorusQuery, Budgets, EdgeClass, PeriodicWord, SquareComplexPresentation, Word};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const CENSUS_SCHEMA: &str = "cubulate.census/v1";
pub const VALIDATION_SCHEMA: &str = "cubulate.validation/v1";
pub const RECTANGLE_SCHEMA: &str = "cubulate.rectangle/v1";
pub const ANTITORUS_SCHEMA: &str = "cubulate.antitorus-screen/v1";
pub const GAMMA_SCHEMA: &str = "cubulate.gamma/v1";
pub const WELLSEP_SCHEMA: &str = "cubulate.well-separation/v1";

/// A budget ran out before the computation finished; maps to exit code 2.
#[derive(Debug)]
pub struct BudgetExceeded(pub String);

impl std::fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for BudgetExceeded {}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Command {
    /// Check that a presentation is a complete square complex.
    Validate(ComplexArgs),
    /// List one-vertex complete square complexes up to relabeling.
    Enumerate(EnumerateArgs),
    /// Fill the rectangle with a given bottom and left word.
    Develop(DevelopArgs),
    /// Screen a pair of axes for commuting powers.
    Antitorus(AntitorusArgs),
    /// Overlap of a w1-geodesic with the flat at height n.
    Gamma(GammaArgs),
    /// Projection-diameter table for n = 1..nmax.
    Obstruct(ObstructArgs),
    /// Well-separation numbers of the strip hyperplanes.
    Wellsep(GammaArgs),
    /// Staircase window and its non-acylindricity certificate.
    Staircase(StaircaseArgs),
    /// Re-run a recorded command and check the artifact is reproduced byte for byte.
    #[serde(skip)]
    Certify(CertifyArgs),
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ComplexArgs {
    /// Presentation file in `.sqc` format.
    #[arg(long)]
    pub complex: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub h: usize,
    #[arg(long)]
    pub v: usize,
    #[arg(long, default_value_t = CensusOptions::default().node_budget)]
    pub node_budget: u64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct DevelopArgs {
    #[arg(long)]
    pub complex: PathBuf,
    /// Bottom word, e.g. "a -b a".
    #[arg(long, allow_hyphen_values = true)]
    pub bottom: String,
    #[arg(long, allow_hyphen_values = true)]
    pub left: String,
    /// Include the cell grid.
    #[arg(long)]
    pub cells: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct AxesArgs {
    #[arg(long)]
    pub complex: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub w1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub w2: String,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct AntitorusArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub axes: AxesArgs,
    #[arg(long, default_value_t = 16)]
    pub k: usize,
    #[arg(long, default_value_t = 16)]
    pub j: usize,
    /// Also find the power `w2^j` that returns `w1^n` to itself.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = Budgets::default().i_max)]
    pub i_max: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = Budgets::default().i_max)]
    pub i_max: usize,
    #[arg(long, default_value_t = Budgets::default().k_max)]
    pub k_max: usize,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        Budgets { i_max: self.i_max, k_max: self.k_max }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GammaArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub axes: AxesArgs,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub budgets: BudgetArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ObstructArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub axes: AxesArgs,
    #[arg(long)]
    pub nmax: usize,
    /// Bounds for the commuting-powers screen.
    #[arg(long, default_value_t = 16)]
    pub k: usize,
    #[arg(long, default_value_t = 16)]
    pub j: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub budgets: BudgetArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct StaircaseArgs {
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub l: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, default_value_t = 2)]
    pub margin: usize,
    /// Translate index for the distance bound; defaults to `steps`.
    #[arg(long)]
    pub p: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CertifyArgs {
    /// Artifact written by an earlier run.
    #[arg(long)]
    pub artifact: PathBuf,
    /// Run manifest; defaults to `<artifact>.manifest.json`.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Enumerate(_) => "enumerate",
            Command::Develop(_) => "develop",
            Command::Antitorus(_) => "antitorus",
            Command::Gamma(_) => "gamma",
            Command::Obstruct(_) => "obstruct",
            Command::Wellsep(_) => "wellsep",
            Command::Staircase(_) => "staircase",
            Command::Certify(_) => "certify",
        }
    }

    fn complex_path_mut(&mut self) -> Option<&mut PathBuf> {
        match self {
            Command::Validate(a) => Some(&mut a.complex),
            Command::Develop(a) => Some(&mut a.complex),
            Command::Antitorus(a) => Some(&mut a.axes.complex),
            Command::Gamma(a) | Command::Wellsep(a) => Some(&mut a.axes.complex),
            Command::Obstruct(a) => Some(&mut a.axes.complex),
            Command::Enumerate(_) | Command::Staircase(_) | Command::Certify(_) => None,
        }
    }

    pub fn complex_path(&self) -> Option<&Path> {
        match self {
            Command::Validate(a) => Some(&a.complex),
            Command::Develop(a) => Some(&a.complex),
            Command::Antitorus(a) => Some(&a.axes.complex),
            Command::Gamma(a) | Command::Wellsep(a) => Some(&a.axes.complex),
            Command::Obstruct(a) => Some(&a.axes.complex),
            Command::Enumerate(_) | Command::Staircase(_) | Command::Certify(_) => None,
        }
    }

    /// Replaces the input path by its absolute form so a manifest can be
    /// replayed from any working directory.
    pub fn absolutize(&mut self) -> Result<()> {
        if let Some(p) = self.complex_path_mut() {
            *p = std::fs::canonicalize(&*p).with_context(|| format!("cannot open {}", p.display()))?;
        }
        Ok(())
    }
}

/// What a subcommand produced, before the manifest digest is attached.
pub struct Artifact {
    pub value: Value,
    pub csv: Option<String>,
    pub dot: Option<String>,
    /// Set when part of the result hit a budget; the artifact is still written.
    pub budget_note: Option<String>,
}

impl Artifact {
    fn json(value: Value) -> Self {
        Self { value, csv: None, dot: None, budget_note: None }
    }
}

fn load_complex(path: &Path) -> Result<SquareComplexPresentation> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_complex(&text).with_context(|| format!("in {}", path.display()))
}

fn parse_word(p: &SquareComplexPresentation, class: EdgeClass, text: &str, what: &str) -> Result<Word> {
    Word::parse(p, class, text).with_context(|| format!("bad {what} word `{text}`"))
}

fn query<'a>(p: &'a SquareComplexPresentation, axes: &AxesArgs) -> Result<AntiTorusQuery<'a>> {
    let w1 = PeriodicWord::new(parse_word(p, EdgeClass::Horizontal, &axes.w1, "w1")?).context("w1")?;
    let w2 = PeriodicWord::new(parse_word(p, EdgeClass::Vertical, &axes.w2, "w2")?).context("w2")?;
    Ok(AntiTorusQuery::new(p, w1, w2)?)
}

fn antitorus_failure(e: AntiTorusError) -> anyhow::Error {
    if e.is_budget() {
        BudgetExceeded(e.to_string()).into()
    } else {
        e.into()
    }
}

pub fn run(cmd: &Command) -> Result<Artifact> {
    match cmd {
        Command::Validate(a) => {
            let p = load_complex(&a.complex)?;
            let mut v = serde_json::to_value(validate_csc(&p))?;
            v["schema"] = json!(VALIDATION_SCHEMA);
            v["one_vertex"] = json!(p.is_one_vertex());
            v["squares"] = json!(p.squares().len());
            Ok(Artifact::json(v))
        }
        Command::Enumerate(a) => {
            let opts = CensusOptions { node_budget: a.node_budget };
            let census = enumerate_csc(a.h, a.v, &opts).map_err(|e| match e {
                CensusError::BudgetExceeded { .. } => BudgetExceeded(e.to_string()).into(),
                other => anyhow::Error::from(other),
            })?;
            let mut csv = String::from("index,squares\n");
            let items: Vec<Value> = census
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let squares: Vec<String> = canonical_form(p)
                        .iter()
                        .map(|s| {
                            [s.bottom, s.right, s.top, s.left].map(|e| p.letter_name(e)).join(" ")
                        })
                        .collect();
                    let _ = writeln!(csv, "{i},{}", squares.join(";"));
                    json!({ "index": i, "squares": squares, "sqc": serialize_complex(p) })
                })
                .collect();
            let v = json!({
                "schema": CENSUS_SCHEMA,
                "h": a.h,
                "v": a.v,
                "count": census.len(),
                "complexes": items,
            });
            Ok(Artifact { csv: Some(csv), ..Artifact::json(v) })
        }
        Command::Develop(a) => {
            let p = load_complex(&a.complex)?;
            let bottom = parse_word(&p, EdgeClass::Horizontal, &a.bottom, "bottom")?;
            let left = parse_word(&p, EdgeClass::Vertical, &a.left, "left")?;
            let mode = if a.cells { CellMode::KeepCells } else { CellMode::BoundaryOnly };
            let rect = fill_rectangle(&p, &bottom, &left, mode)?;
            let mut v = json!({
                "schema": RECTANGLE_SCHEMA,
                "width": rect.width,
                "height": rect.height,
                "bottom": rect.bottom.display(&p).to_string(),
                "left": rect.left.display(&p).to_string(),
                "top": rect.top.display(&p).to_string(),
                "right": rect.right.display(&p).to_string(),
            });
            if let Some(cells) = &rect.cells {
                let grid: Vec<Vec<String>> = cells
                    .iter()
                    .map(|col| {
                        col.iter()
                            .map(|s| [s.bottom, s.right, s.top, s.left].map(|e| p.letter_name(e)).join(" "))
                            .collect()
                    })
                    .collect();
                v["cells"] = json!(grid);
            }
            Ok(Artifact::json(v))
        }
        Command::Antitorus(a) => {
            let p = load_complex(&a.axes.complex)?;
            let q = query(&p, &a.axes)?;
            let found = commuting_powers_search(&q, a.k, a.j);
            let periodic = match a.n {
                Some(n) => {
                    let t = find_periodic_top(&q, n, a.i_max).map_err(antitorus_failure)?;
                    Some(json!({ "n": n, "j": t.j, "first_repeat": t.first_repeat, "i_max": a.i_max }))
                }
                None => None,
            };
            let v = json!({
                "schema": ANTITORUS_SCHEMA,
                "w1": a.axes.w1,
                "w2": a.axes.w2,
                "bounds": { "k": a.k, "j": a.j },
                "commuting_powers": found.map(|(k, j)| json!({ "k": k, "j": j })),
                "anti_torus_up_to_bounds": found.is_none(),
                "periodic_top": periodic,
            });
            Ok(Artifact::json(v))
        }
        Command::Gamma(a) => {
            let p = load_complex(&a.axes.complex)?;
            let q = query(&p, &a.axes)?;
            let g = overlap_gamma(&q, a.n, &a.budgets.budgets()).map_err(antitorus_failure)?;
            let mut v = serde_json::to_value(g)?;
            v["schema"] = json!(GAMMA_SCHEMA);
            v["contains_basepoint"] = json!(g.contains_basepoint());
            v["bounds"] = json!({ "i_max": a.budgets.i_max, "k_max": a.budgets.k_max });
            Ok(Artifact::json(v))
        }
        Command::Wellsep(a) => {
            let p = load_complex(&a.axes.complex)?;
            let q = query(&p, &a.axes)?;
            let w = well_separation(&q, a.n, &a.budgets.budgets()).map_err(antitorus_failure)?;
            let mut v = serde_json::to_value(&w)?;
            v["schema"] = json!(WELLSEP_SCHEMA);
            v["well_separated"] = json!(w.l);
            v["bounds"] = json!({ "i_max": a.budgets.i_max, "k_max": a.budgets.k_max });
            Ok(Artifact::json(v))
        }
        Command::Obstruct(a) => {
            let p = load_complex(&a.axes.complex)?;
            let q = query(&p, &a.axes)?;
            let table = obstruction_table(&q, a.nmax, (a.k, a.j), &a.budgets.budgets()).map_err(|e| match e {
                ObstructionError::AntiTorus(inner) => antitorus_failure(inner),
                other => other.into(),
            })?;
            let budget_note = table
                .rows
                .iter()
                .find(|r| r.budget_exceeded)
                .map(|r| format!("row n = {}: {}", r.n, r.failure.as_deref().unwrap_or("")));
            Ok(Artifact {
                value: serde_json::to_value(&table)?,
                csv: Some(table.to_csv()),
                dot: None,
                budget_note,
            })
        }
        Command::Staircase(a) => {
            let params = StairParams::new(a.l, a.r, a.steps, a.margin)?;
            let p = a.p.unwrap_or(a.steps);
            let cert = nonacyl_certificate(params, p)?;
            let analysis = analyze(params)?;
            let mut csv = String::from("wall,family_crossings\n");
            for c in &cert.crossing_counts {
                let _ = writeln!(csv, "{},{}", c.wall, c.count);
            }
            Ok(Artifact {
                value: serde_json::to_value(&cert)?,
                csv: Some(csv),
                dot: Some(analysis.contact.to_dot(&analysis.walls)),
                budget_note: None,
            })
        }
        Command::Certify(_) => bail!("certify is handled by the manifest layer"),
    }
}
