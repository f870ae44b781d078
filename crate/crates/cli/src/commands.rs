//! Command-line arguments and the commands they run.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use fundament_core::cohomology::{cocycle_of_cover, cohom_space_of};
use fundament_core::fprod::{fiber_product_capped, is_compact_fiber_product};
use fundament_core::fundament::{
    decompose_fundamental, dominates, exists_semicartesian_lift, fundament, fundament_kernel, fundament_series,
    invariants, is_fundamental, isomorphic_fundamental,
};
use fundament_core::search::find_isomorphism_over;
use fundament_core::squares::{is_cartesian, is_compact_cartesian, is_semi_cartesian, make_square};
use fundament_core::{Cover, Error, Subgroup, DEFAULT_ORDER_CAP};

use crate::error::{CliError, Context, Result};
use crate::expr::{argument_location, parse_cover, parse_group, parse_module};
use crate::json::{labeled_rows, FieldData, GroupData, HomData, ModuleData, SubgroupData};
use crate::workspace::Workspace;

/// Version of the JSON document layout.
pub const SCHEMA: u32 = 1;

/// Decisions about epimorphisms of finite groups.
///
/// Cover arguments are declared hom or fiber product names, `G->1`, `id(G)`,
/// `fprod(a, b, ...)`, `then(a, b)` or `a^k`. Besides declared groups,
/// `1`, `C<n>`, `S<n>`, `A<n>`, `D<m>` (order 2m), `Q8`, `V4` and products
/// `GxH` are available. Modules are `F<p>triv` or `ker(<cover>)`.
#[derive(Parser, Debug)]
#[command(name = "fundament", version)]
pub struct Cli {
    /// Workspace file with group, hom and fprod declarations; repeatable.
    #[arg(short = 'f', long = "file", value_name = "FILE", global = true)]
    pub files: Vec<PathBuf>,
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest group order that may be built.
    #[arg(long, value_name = "N", global = true, default_value_t = DEFAULT_ORDER_CAP)]
    pub max_order: usize,
    /// Seed for randomized checks; recorded in the output, no command currently draws from it.
    #[arg(long, value_name = "N", global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Fiber product of covers over a common base.
    Fprod {
        #[arg(required = true)]
        covers: Vec<String>,
    },
    /// Properties of the square with edges top H->G, left H->B, bottom B->A, right G->A.
    CheckSquare {
        top: String,
        left: String,
        bottom: String,
        right: String,
        /// Property reported on the last line.
        #[arg(long, value_enum, default_value_t = SquareProperty::Cartesian)]
        property: SquareProperty,
    },
    /// Second cohomology of a group with coefficients in a simple module.
    H2 { group: String, module: String },
    /// Cocycle and cohomology class of a cover with elementary abelian kernel.
    Cocycle { cover: String },
    /// Fundament of a cover.
    Fundament { cover: String },
    /// Fundament series of a cover.
    Series { cover: String },
    /// Multiplicities and supports of a fundamental cover.
    Invariants { cover: String },
    /// Whether `smaller` factors through `larger` over their common base.
    Dominates { smaller: String, larger: String },
    /// Whether two covers of one base are isomorphic over it.
    Isomorphic { first: String, second: String },
    /// Whether some map between the sources of `tau` and `tau2` gives a
    /// semi-cartesian square over `pi`.
    Lift { pi: String, tau: String, tau2: String },
    /// A fundamental cover as a fiber product of indecomposable covers.
    Decompose { cover: String },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareProperty {
    Cartesian,
    SemiCartesian,
    Compact,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fprod { .. } => "fprod",
            Command::CheckSquare { .. } => "check-square",
            Command::H2 { .. } => "h2",
            Command::Cocycle { .. } => "cocycle",
            Command::Fundament { .. } => "fundament",
            Command::Series { .. } => "series",
            Command::Invariants { .. } => "invariants",
            Command::Dominates { .. } => "dominates",
            Command::Isomorphic { .. } => "isomorphic",
            Command::Lift { .. } => "lift",
            Command::Decompose { .. } => "decompose",
        }
    }

    pub fn arguments(&self) -> Vec<String> {
        match self {
            Command::Fprod { covers } => covers.clone(),
            Command::CheckSquare { top, left, bottom, right, .. } => {
                vec![top.clone(), left.clone(), bottom.clone(), right.clone()]
            }
            Command::H2 { group, module } => vec![group.clone(), module.clone()],
            Command::Cocycle { cover }
            | Command::Fundament { cover }
            | Command::Series { cover }
            | Command::Invariants { cover }
            | Command::Decompose { cover } => vec![cover.clone()],
            Command::Dominates { smaller, larger } => vec![smaller.clone(), larger.clone()],
            Command::Isomorphic { first, second } => vec![first.clone(), second.clone()],
            Command::Lift { pi, tau, tau2 } => vec![pi.clone(), tau.clone(), tau2.clone()],
        }
    }
}

/// Text lines, the JSON result and, for decision commands, the answer.
#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub result: Map<String, Value>,
    pub decision: Option<bool>,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.result.insert(key.to_string(), v.into());
    }

    fn decide(&mut self, v: bool) {
        self.decision = Some(v);
        self.set("value", v);
    }

    /// The text rendering; decision commands end with a bare `true`/`false`.
    pub fn text(&self) -> String {
        let mut out = self.lines.join("\n");
        if let Some(v) = self.decision {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(if v { "true" } else { "false" });
        }
        out
    }

    pub fn document(&self, cli: &Cli) -> Value {
        json!({
            "schema": SCHEMA,
            "command": cli.command.name(),
            "arguments": cli.command.arguments(),
            "seed": cli.seed,
            "result": Value::Object(self.result.clone()),
        })
    }
}

/// The JSON document for a failed invocation.
pub fn error_document(err: &CliError) -> Value {
    json!({ "schema": SCHEMA, "error": { "kind": err.kind(), "message": err.to_string() } })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn subgroup(s: &Subgroup) -> Value {
    to_value(&SubgroupData::from_subgroup(s))
}

fn hom(pi: &Cover) -> Value {
    to_value(&HomData::from_hom(pi.hom()))
}

fn describe(pi: &Cover) -> String {
    format!("order {} -> order {}, kernel order {}", pi.source().order(), pi.target().order(), pi.kernel().order())
}

fn elements(s: &Subgroup) -> String {
    let list: Vec<String> = s.elements().iter().map(u32::to_string).collect();
    format!("{{{}}}", list.join(", "))
}

fn cover_arg(ws: &Workspace, text: &str, index: usize) -> Result<Cover> {
    ws.eval_cover(&parse_cover(text, &argument_location(index))?)
}

pub fn run(ws: &Workspace, command: &Command) -> Result<Report> {
    let mut r = Report::default();
    match command {
        Command::Fprod { covers } => {
            let covers = covers.iter().enumerate().map(|(i, c)| cover_arg(ws, c, i + 1)).collect::<Result<Vec<_>>>()?;
            let base = covers[0].target().clone();
            let fp = fiber_product_capped(&base, &covers, ws.cap()).context(|| "fiber product".into())?;
            let compact = is_compact_fiber_product(&fp).context(|| "compactness".into())?;
            r.line(format!("base: order {}", base.order()));
            r.line(format!("factors: {}", fp.len()));
            r.line(format!("carrier: order {}", fp.carrier().order()));
            r.line(format!("kernel: order {}", fp.structure_map().kernel().order()));
            let axes: Vec<usize> = fp.axis_kernels().iter().map(Subgroup::order).collect();
            r.line(format!("axis kernel orders: {axes:?}"));
            r.line(format!("compact: {compact}"));
            r.set("base", to_value(&GroupData::from_group(&base)));
            r.set("carrier", to_value(&GroupData::from_group(fp.carrier())));
            r.set("structure_map", hom(fp.structure_map()));
            r.set("projections", fp.projections().iter().map(hom).collect::<Vec<_>>());
            r.set("kernel", subgroup(fp.structure_map().kernel()));
            r.set("axis_kernels", fp.axis_kernels().iter().map(subgroup).collect::<Vec<_>>());
            r.set("compact", compact);
        }
        Command::CheckSquare { top, left, bottom, right, property } => {
            let edges = [top, left, bottom, right];
            let [t, l, b, rt] = [0, 1, 2, 3].map(|i| cover_arg(ws, edges[i], i + 1));
            let sq = make_square(t?, l?, b?, rt?).context(|| "square".into())?;
            let cartesian = is_cartesian(&sq);
            let semi = is_semi_cartesian(&sq);
            let compact =
                if cartesian { Some(is_compact_cartesian(&sq).context(|| "compactness".into())?) } else { None };
            r.line(format!("cartesian: {cartesian}"));
            r.line(format!("semi-cartesian: {semi}"));
            r.line(match compact {
                Some(c) => format!("compact: {c}"),
                None => "compact: not defined (square is not cartesian)".into(),
            });
            r.set("cartesian", cartesian);
            r.set("semi_cartesian", semi);
            r.set("compact", compact);
            r.set("property", property.to_possible_value().expect("no skipped variants").get_name());
            r.decide(match property {
                SquareProperty::Cartesian => cartesian,
                SquareProperty::SemiCartesian => semi,
                SquareProperty::Compact => compact == Some(true),
            });
        }
        Command::H2 { group, module } => {
            let (name, at) = parse_group(group, &argument_location(1))?;
            let g = ws.group(&name, &at)?;
            let m = Arc::new(ws.eval_module(&parse_module(module, &argument_location(2))?, &g)?);
            let space = cohom_space_of(&g, &m).context(|| format!("H^2({group}, {module})"))?;
            let field = space.field();
            r.line(format!("group: order {}", g.order()));
            r.line(format!("module: F_{} dimension {}", m.characteristic(), m.dim()));
            r.line(format!("field: F_{}", field.order()));
            r.line(format!(
                "dim Z^2 = {}, dim B^2 = {} (over F_{})",
                space.z2_dim(),
                space.b2_dim(),
                m.characteristic()
            ));
            r.line(format!("dim_Fp = {}", space.dim_fp()));
            r.line(format!("dim_F = {}", space.dim()));
            r.set("group", to_value(&GroupData::from_group(&g)));
            r.set("module", to_value(&ModuleData::from_module(&m)));
            r.set("field", to_value(&FieldData::from_field(field)));
            r.set("z2_dim", space.z2_dim());
            r.set("b2_dim", space.b2_dim());
            r.set("dim_Fp", space.dim_fp());
            r.set("dim_F", space.dim());
        }
        Command::Cocycle { cover } => {
            let pi = cover_arg(ws, cover, 1)?;
            let (kernel, f) = cocycle_of_cover(&pi).context(|| format!("cocycle of {cover}"))?;
            let g = pi.target();
            let n = g.order() as u32;
            let nonzero = (0..n)
                .flat_map(|s| (0..n).map(move |t| (s, t)))
                .filter(|&(s, t)| f.value(s, t).iter().any(|&x| x != 0));
            let nonzero: Vec<(u32, u32)> = nonzero.collect();
            r.line(format!("cover: {}", describe(&pi)));
            r.line(format!("kernel: F_{} dimension {}", kernel.module().characteristic(), kernel.module().dim()));
            r.line(format!("nonzero values: {} of {}", nonzero.len(), n * n));
            for &(s, t) in nonzero.iter().take(32) {
                r.line(format!("  f({s}, {t}) = {:?}", f.value(s, t)));
            }
            if nonzero.len() > 32 {
                r.line("  ...");
            }
            let values: Vec<Vec<Vec<u32>>> = (0..n).map(|s| (0..n).map(|t| f.value(s, t).to_vec()).collect()).collect();
            r.set("kernel", subgroup(kernel.subgroup()));
            r.set("kernel_basis", kernel.basis().to_vec());
            r.set("module", to_value(&ModuleData::from_module(kernel.module())));
            r.set("values", to_value(&values));
            match cohom_space_of(g, kernel.module()) {
                Ok(space) => {
                    let class = space.class_of(&f).context(|| "class".into())?;
                    let coords = labeled_rows(space.field(), &[class.coordinates().to_vec()]).remove(0);
                    r.line(format!("class coordinates over F_{}: [{}]", space.field().order(), coords.join(", ")));
                    r.line(format!("split: {}", class.is_zero()));
                    r.set("field", to_value(&FieldData::from_field(space.field())));
                    r.set("class", coords);
                    r.set("split", class.is_zero());
                }
                Err(Error::NotSimple) => {
                    r.line("class: not computed (kernel is not a simple module)");
                    r.set("class", Value::Null);
                    r.set("split", Value::Null);
                }
                Err(e) => return Err(CliError::Library { context: "cohomology of the kernel".into(), source: e }),
            }
        }
        Command::Fundament { cover } => {
            let pi = cover_arg(ws, cover, 1)?;
            let m = fundament_kernel(&pi);
            let (bar, rho) = fundament(&pi);
            let fundamental = is_fundamental(&pi);
            r.line(format!("cover: {}", describe(&pi)));
            r.line(format!("fundament kernel: order {} {}", m.order(), elements(&m)));
            r.line(format!("fundament: {}", describe(&bar)));
            r.line(format!("fundamental: {fundamental}"));
            r.set("kernel", subgroup(&m));
            r.set("fundament", hom(&bar));
            r.set("quotient", hom(&rho));
            r.set("fundamental", fundamental);
        }
        Command::Series { cover } => {
            let pi = cover_arg(ws, cover, 1)?;
            let s = fundament_series(&pi);
            let sizes: Vec<usize> = s.kernels().iter().map(Subgroup::order).collect();
            r.line(format!("cover: {}", describe(&pi)));
            r.line(format!("kernel sizes: {sizes:?}"));
            for (k, stage) in s.stages().iter().enumerate() {
                r.line(format!("stage {}: {}", k + 1, describe(stage)));
            }
            r.set("sizes", sizes);
            r.set("kernels", s.kernels().iter().map(subgroup).collect::<Vec<_>>());
            r.set("stages", s.stages().iter().map(hom).collect::<Vec<_>>());
        }
        Command::Invariants { cover } => {
            let pi = cover_arg(ws, cover, 1)?;
            let inv = invariants(&pi).context(|| format!("invariants of {cover}"))?;
            r.line(format!("cover: {}", describe(&pi)));
            let mut mults = Map::new();
            let mut na = Vec::new();
            for (k, c) in inv.na_classes.iter().enumerate() {
                let id = format!("na{}", k + 1);
                r.line(format!("{id}: non-abelian kernel, {}; mult = {}", describe(&c.representative), c.mult));
                mults.insert(id.clone(), c.mult.into());
                na.push(json!({ "id": id, "representative": hom(&c.representative), "mult": c.mult }));
            }
            let mut ab = Vec::new();
            for (k, c) in inv.ab_classes.iter().enumerate() {
                let id = format!("ab{}", k + 1);
                let field = c.field();
                let supp = labeled_rows(field, &c.supp);
                let rows: Vec<String> = supp.iter().map(|row| format!("[{}]", row.join(", "))).collect();
                r.line(format!(
                    "{id}: module F_{} dimension {}, field F_{}, dim H^2 = {}; mult = {}; supp = [{}]",
                    c.module().characteristic(),
                    c.module().dim(),
                    field.order(),
                    c.space.dim(),
                    c.mult,
                    rows.join(", ")
                ));
                mults.insert(id.clone(), c.mult.into());
                ab.push(json!({
                    "id": id,
                    "module": to_value(&ModuleData::from_module(c.module())),
                    "field": to_value(&FieldData::from_field(field)),
                    "h2_dim": c.space.dim(),
                    "supp": supp,
                    "mult": c.mult,
                }));
            }
            if inv.na_classes.is_empty() && inv.ab_classes.is_empty() {
                r.line("no classes (the cover is an isomorphism)");
            }
            r.set("nonabelian", na);
            r.set("abelian", ab);
            r.set("multiplicities", mults);
        }
        Command::Dominates { smaller, larger } => {
            let (a, b) = (cover_arg(ws, smaller, 1)?, cover_arg(ws, larger, 2)?);
            r.decide(dominates(&a, &b).context(|| "dominates".into())?);
        }
        Command::Isomorphic { first, second } => {
            let (a, b) = (cover_arg(ws, first, 1)?, cover_arg(ws, second, 2)?);
            if a.target().as_ref() != b.target().as_ref() {
                return Err(CliError::Library { context: "isomorphic".into(), source: Error::BaseMismatch });
            }
            let (method, value) = if is_fundamental(&a) && is_fundamental(&b) {
                ("invariants", isomorphic_fundamental(&a, &b).context(|| "isomorphic".into())?)
            } else {
                ("search", find_isomorphism_over(&a, &b).is_some())
            };
            r.line(format!("method: {method}"));
            r.set("method", method);
            r.decide(value);
        }
        Command::Lift { pi, tau, tau2 } => {
            let (p, t, t2) = (cover_arg(ws, pi, 1)?, cover_arg(ws, tau, 2)?, cover_arg(ws, tau2, 3)?);
            r.decide(exists_semicartesian_lift(&p, &t, &t2).context(|| "lift".into())?);
        }
        Command::Decompose { cover } => {
            let pi = cover_arg(ws, cover, 1)?;
            let d = decompose_fundamental(&pi).context(|| format!("decomposition of {cover}"))?;
            r.line(format!("cover: {}", describe(&pi)));
            r.line(format!("factors: {}", d.factors.len()));
            for (k, f) in d.factors.iter().enumerate() {
                let kind = if f.kernel().is_abelian() { "abelian" } else { "non-abelian" };
                r.line(format!("factor {}: {}, {kind} kernel", k + 1, describe(f)));
            }
            r.set("factors", d.factors.iter().map(hom).collect::<Vec<_>>());
            r.set("iso", to_value(&HomData::from_hom(&d.iso)));
        }
    }
    Ok(r)
}
