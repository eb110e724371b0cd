//! Command-line surface. Every command prints one JSON payload with sorted
//! keys; `--manifest` records timing separately so payloads stay reproducible.

use crate::apartment::{Shape, T1, T2};
use crate::building::counts::{regular_shapes, sphere_constancy, y_laws, z_laws};
use crate::building::sectors::{sphere, ShapeMap};
use crate::building::{build_ball, BuildingBall};
use crate::diffset::{check_difference_set, embed_difference_sets, normalize, plane_from_difference_set, singer_difference_set};
use crate::error::{Error, Result};
use crate::group::{abelianization, perfect_check, Presentation, SubgroupSpec, Word, DEFAULT_MAX_COSETS};
use crate::measure;
use crate::plane::{
    check_axioms, find_isomorphism, nontriv_configurations, nontriv_fixed_point_check, pg2_of_order, projectivity_group,
    transitivity_report, IncidencePlane, Vertex,
};
use crate::presentation::{essert_presentation, exotic_construct, gamma0, lattice_morphism, torsion_classify, EssertData};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "a2tilde", version, about = "Exact computations around Ã2 buildings and their lattices")]
pub struct Cli {
    /// Write the JSON payload here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write a Graphviz rendering here, where the command has one.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Worker threads for parallel commands.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write a run manifest (command, parameters, version, timing, status).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Projective planes.
    #[command(subcommand)]
    Plane(PlaneCmd),
    /// Planar difference sets.
    #[command(subcommand)]
    Diffset(DiffsetCmd),
    /// Projectivity groups.
    #[command(subcommand)]
    Proj(ProjCmd),
    /// Essert presentations and lattice morphisms.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Balls in the building of SL3(F_q((t))).
    #[command(subcommand)]
    Building(BuildingCmd),
    /// Visual measures on cylinder cells.
    #[command(subcommand)]
    Measure(MeasureCmd),
}

#[derive(Subcommand, Debug)]
pub enum PlaneCmd {
    /// PG(2, q) with its axiom report.
    Gen {
        #[arg(long)]
        q: u32,
        /// Include the line list.
        #[arg(long)]
        full: bool,
    },
    /// Check the axioms of a plane given as JSON {order, points, line_sets}, e.g. from `plane gen --full`.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum DiffsetCmd {
    /// Singer difference set of order q.
    Singer {
        #[arg(long)]
        q: u64,
    },
    /// Check a set modulo n.
    Check {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',')]
        set: Vec<u64>,
    },
    /// Nested pair D0 in Z/n0 scaled into D in Z/n for q = q0^e.
    Embed {
        #[arg(long)]
        q0: u64,
        #[arg(long)]
        e: u32,
    },
    /// Plane of the Singer set of order q, compared with PG(2, q).
    Plane {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum ProjCmd {
    /// Projectivity group of a pencil in PG(2, q).
    Group {
        #[arg(long)]
        q: u32,
        /// P<id> or L<id>.
        #[arg(long, default_value = "P0")]
        vertex: String,
    },
    /// Transitivity and Moufang classification for points and lines.
    Classify {
        #[arg(long)]
        q: u32,
    },
    /// Fixed flags of the closed chain of every valid configuration.
    Nontriv {
        #[arg(long)]
        q: u32,
    },
}

/// Essert data given on the command line; defaults to Γ0.
#[derive(Args, Debug, Clone)]
pub struct DataArgs {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub set: Option<Vec<u64>>,
    /// Images of sorted D under pi1.
    #[arg(long, value_delimiter = ',')]
    pub pi1: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    pub pi2: Option<Vec<u64>>,
}

impl DataArgs {
    fn resolve(&self) -> Result<EssertData> {
        match (&self.n, &self.set) {
            (Some(n), Some(set)) => {
                let mut sorted = set.iter().map(|x| x % n).collect::<Vec<_>>();
                sorted.sort_unstable();
                let id = sorted.clone();
                EssertData::from_images(*n, set, self.pi1.as_ref().unwrap_or(&id), self.pi2.as_ref().unwrap_or(&id))
            }
            (None, None) => Ok(gamma0()),
            _ => Err(Error::InvalidData("--n and --set go together".into())),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct PresentationInput {
    /// Presentation file in JSON or GAP format; defaults to Γ0.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

impl PresentationInput {
    fn resolve(&self) -> Result<Presentation> {
        match &self.input {
            None => Ok(essert_presentation(&gamma0())),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(e.to_string()))?;
                if text.trim_start().starts_with('{') {
                    Presentation::from_json(&text)
                } else {
                    Presentation::from_gap(&text)
                }
            }
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Essert presentation as JSON and GAP text.
    Present {
        #[command(flatten)]
        data: DataArgs,
    },
    /// Finite or infinite order of s0^d s1^e.
    Torsion {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        d: u64,
        /// Omit to classify every e.
        #[arg(long)]
        e: Option<u64>,
    },
    /// Morphism certificate from Γ0 to the given data, or to the exotic data of order q.
    Morphism {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, conflicts_with = "n")]
        q: Option<u64>,
    },
    /// Abelian invariants.
    Abelianize {
        #[command(flatten)]
        input: PresentationInput,
    },
    /// Whether the derived subgroup (or the subgroup generated by --gens) is perfect.
    Perfect {
        #[command(flatten)]
        input: PresentationInput,
        /// Subgroup generators as GAP words separated by ';'.
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Exotic lattice of order q = 2^e, e not divisible by 3.
    Exotic {
        #[arg(long)]
        q: u64,
        /// Print the presentation in GAP format instead of the bundle.
        #[arg(long)]
        gap: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct BallArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, default_value_t = 2)]
    pub r: u32,
}

#[derive(Subcommand, Debug)]
pub enum BuildingCmd {
    /// Build a ball and check links, panels and connectivity.
    Ball {
        #[command(flatten)]
        ball: BallArgs,
        /// Include vertices, adjacency and chambers.
        #[arg(long)]
        full: bool,
    },
    /// V_λ(x) for a vertex id (default: the base vertex).
    Sphere {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long)]
        x: Option<u32>,
        #[arg(long)]
        shape: Shape,
    },
    /// Sphere, Y_w and Z power laws.
    Counts {
        #[command(flatten)]
        ball: BallArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct MeasureArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, default_value_t = 3)]
    pub r: u32,
    /// Basepoint id (default: the base vertex).
    #[arg(long)]
    pub x: Option<u32>,
    #[arg(long, default_value = "2,2")]
    pub shape: Shape,
}

#[derive(Subcommand, Debug)]
pub enum MeasureCmd {
    /// Cylinder table, its total and both refinements.
    Table {
        #[command(flatten)]
        m: MeasureArgs,
    },
    /// Radon-Nikodym ratios against a second basepoint (default: the first neighbor).
    Rn {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long)]
        y: Option<u32>,
    },
    /// β on opposite pairs and its change of basepoint.
    Beta {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long)]
        y: Option<u32>,
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// m-mass of the finite-depth F'_x.
    Mfx {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// Plus and minus tables.
    Pm {
        #[command(flatten)]
        m: MeasureArgs,
    },
    /// Disintegration identity; --shape may be repeated, constants come from (1,1).
    Disint {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 3)]
        r: u32,
        #[arg(long)]
        x: Option<u32>,
        #[arg(long = "shape", default_values = ["1,1", "2,1"])]
        shapes: Vec<Shape>,
    },
}

/// Result of one command.
pub struct Outcome {
    pub payload: Value,
    pub pass: bool,
    pub dot: Option<String>,
}

fn ok<T: Serialize>(v: &T, pass: bool) -> Outcome {
    Outcome { payload: serde_json::to_value(v).expect("serializable"), pass, dot: None }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn plane_json(p: &IncidencePlane, full: bool) -> Value {
    let mut v = json!({
        "order": p.order,
        "points": p.num_points,
        "lines": p.num_lines(),
        "incidences": p.incidence_count(),
    });
    if full {
        v["line_sets"] = serde_json::to_value(&p.lines).unwrap();
    }
    v
}

fn run_plane(cmd: &PlaneCmd) -> Result<Outcome> {
    match cmd {
        PlaneCmd::Gen { q, full } => {
            let p = pg2_of_order(*q)?;
            let rep = check_axioms(&p);
            let pass = rep.pass;
            Ok(Outcome { payload: json!({"plane": plane_json(&p, *full), "axioms": rep}), pass, dot: Some(p.to_dot()) })
        }
        PlaneCmd::Check { input } => {
            // accepts the `plane gen --full` payload or its `plane` object
            #[derive(serde::Deserialize)]
            struct PlaneFile {
                order: Option<u32>,
                points: usize,
                line_sets: Vec<Vec<u32>>,
            }
            let text = std::fs::read_to_string(input).map_err(|e| Error::Parse(e.to_string()))?;
            let mut v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            if let Some(inner) = v.get_mut("plane") {
                v = inner.take();
            }
            let f: PlaneFile = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
            if f.line_sets.iter().flatten().any(|&p| p as usize >= f.points) {
                return Err(Error::InvalidData("line contains a point outside 0..points".into()));
            }
            let order = f.order.unwrap_or_else(|| f.line_sets.first().map_or(0, |l| l.len().saturating_sub(1) as u32));
            let p = IncidencePlane::new(order, f.points, f.line_sets);
            let rep = check_axioms(&p);
            let pass = rep.pass;
            Ok(Outcome { payload: json!({"plane": plane_json(&p, false), "axioms": rep}), pass, dot: Some(p.to_dot()) })
        }
    }
}

fn run_diffset(cmd: &DiffsetCmd) -> Result<Outcome> {
    match cmd {
        DiffsetCmd::Singer { q } => {
            let rec = singer_difference_set(*q)?;
            let norm = normalize(rec.n, &rec.set);
            Ok(Outcome { pass: rec.verified, payload: json!({"record": rec, "normalized": norm}), dot: None })
        }
        DiffsetCmd::Check { n, set } => {
            if *n == 0 {
                return Err(Error::InvalidData("n must be positive".into()));
            }
            let rec = check_difference_set(*n, set);
            Ok(ok(&rec, rec.verified))
        }
        DiffsetCmd::Embed { q0, e } => {
            let pair = embed_difference_sets(*q0, *e)?;
            let inclusion = pair.base.set.iter().all(|d| pair.big.set.contains(&(d * pair.scale % pair.big.n)));
            let pass = pair.base.verified && pair.big.verified && inclusion;
            Ok(Outcome { payload: json!({"pair": pair, "scaled_inclusion": inclusion}), pass, dot: None })
        }
        DiffsetCmd::Plane { q } => {
            let rec = singer_difference_set(*q)?;
            let plane = plane_from_difference_set(&rec)?;
            let rep = check_axioms(&plane);
            let iso = if *q <= 4 { Some(find_isomorphism(&plane, &pg2_of_order(*q as u32)?).is_some()) } else { None };
            let pass = rep.pass && iso != Some(false);
            Ok(Outcome {
                payload: json!({"record": rec, "plane": plane_json(&plane, false), "axioms": rep, "isomorphic_to_pg2": iso}),
                pass,
                dot: Some(plane.to_dot()),
            })
        }
    }
}

fn run_proj(cmd: &ProjCmd) -> Result<Outcome> {
    match cmd {
        ProjCmd::Group { q, vertex } => {
            let plane = pg2_of_order(*q)?;
            let v: Vertex = vertex.parse().map_err(Error::Parse)?;
            let g = projectivity_group(&plane, v)?;
            let rep = transitivity_report(&g);
            let pass = rep.max_transitivity >= 3;
            Ok(Outcome {
                payload: json!({"base": v.to_string(), "degree": g.degree, "order": g.order, "generators": g.generators.len(), "transitivity": rep}),
                pass,
                dot: None,
            })
        }
        ProjCmd::Classify { q } => {
            let plane = pg2_of_order(*q)?;
            let mut out = serde_json::Map::new();
            let mut pass = true;
            for v in [Vertex::Point(0), Vertex::Line(0)] {
                let rep = transitivity_report(&projectivity_group(&plane, v)?);
                pass &= rep.max_transitivity >= 3;
                out.insert(v.to_string(), serde_json::to_value(&rep).unwrap());
            }
            Ok(Outcome { payload: Value::Object(out), pass, dot: None })
        }
        ProjCmd::Nontriv { q } => {
            let plane = pg2_of_order(*q)?;
            let configs = nontriv_configurations(&plane);
            let mut failures = Vec::new();
            for cfg in &configs {
                let res = nontriv_fixed_point_check(&plane, cfg)?;
                if res.fixed != vec![cfg.c0] {
                    failures.push(json!({"config": cfg, "fixed": res.fixed}));
                }
            }
            let pass = failures.is_empty() && !configs.is_empty();
            Ok(Outcome { payload: json!({"q": q, "configurations": configs.len(), "failures": failures}), pass, dot: None })
        }
    }
}

fn parse_words(p: &Presentation, text: &str) -> Result<Vec<Word>> {
    let list = text.split(';').map(str::trim).filter(|s| !s.is_empty()).collect::<Vec<_>>().join(", ");
    let names: Vec<String> = p.generators.iter().map(|g| format!("\"{g}\"")).collect();
    let wrapped = format!("F := FreeGroup({});; G := F / [ {list} ];;", names.join(", "));
    Ok(Presentation::from_gap(&wrapped)?.relators)
}

fn run_lattice(cmd: &LatticeCmd) -> Result<Outcome> {
    match cmd {
        LatticeCmd::Present { data } => {
            let d = data.resolve()?;
            let p = essert_presentation(&d);
            Ok(Outcome { payload: json!({"data": d, "presentation": p.to_json(), "gap": p.to_gap()}), pass: true, dot: None })
        }
        LatticeCmd::Torsion { data, d, e } => {
            let data = data.resolve()?;
            let es: Vec<u64> = match e {
                Some(e) => vec![*e],
                None => (0..data.n).collect(),
            };
            let verdicts = es.iter().map(|&e| torsion_classify(&data, *d, e)).collect::<Result<Vec<_>>>()?;
            let finite = verdicts.iter().filter(|v| v.finite).count();
            let pass = e.is_some() || (finite == 2 && verdicts.len() - finite == (data.q * data.q + data.q - 1) as usize);
            Ok(Outcome { payload: json!({"verdicts": verdicts, "finite": finite, "infinite": verdicts.len() - finite}), pass, dot: None })
        }
        LatticeCmd::Morphism { data, q } => {
            let target = match q {
                Some(q) => exotic_construct(*q)?.data,
                None => data.resolve()?,
            };
            match lattice_morphism(&gamma0(), &target) {
                Ok(cert) => {
                    let pass = cert.valid;
                    Ok(ok(&cert, pass))
                }
                Err(Error::ConditionFailed { bullet, detail }) => Ok(Outcome {
                    payload: json!({"valid": false, "failed_condition": bullet, "detail": detail, "target": target}),
                    pass: false,
                    dot: None,
                }),
                Err(e) => Err(e),
            }
        }
        LatticeCmd::Abelianize { input } => {
            let p = input.resolve()?;
            let ab = abelianization(&p);
            Ok(Outcome {
                payload: json!({"presentation": p.to_json(), "invariants": ab, "group": ab.to_string()}),
                pass: true,
                dot: None,
            })
        }
        LatticeCmd::Perfect { input, gens, max_cosets } => {
            let p = input.resolve()?;
            let spec = match gens {
                None => SubgroupSpec::Derived,
                Some(g) => SubgroupSpec::Generators(parse_words(&p, g)?),
            };
            let rep = perfect_check(&p, &spec, *max_cosets)?;
            let pass = rep.perfect;
            Ok(ok(&rep, pass))
        }
        LatticeCmd::Exotic { q, gap } => {
            let b = exotic_construct(*q)?;
            let pass = b.certificate.valid && b.derived_subgroup_perfect;
            if *gap {
                let p = essert_presentation(&b.data);
                return Ok(Outcome { payload: json!({"gap": p.to_gap()}), pass, dot: None });
            }
            Ok(ok(&b, pass))
        }
    }
}

fn ball(a: &BallArgs) -> Result<BuildingBall> {
    build_ball(a.q, a.r)
}

fn vertex_arg(b: &BuildingBall, x: Option<u32>) -> Result<u32> {
    match x {
        None => Ok(b.origin()),
        Some(v) if (v as usize) < b.len() => Ok(v),
        Some(v) => Err(Error::InvalidData(format!("vertex {v} is not in the ball"))),
    }
}

fn run_building(cmd: &BuildingCmd) -> Result<Outcome> {
    match cmd {
        BuildingCmd::Ball { ball: a, full } => {
            let b = ball(a)?;
            let (links, edges) = b.regularity_defects();
            let connected = b.is_connected();
            let mut spheres = serde_json::Map::new();
            let sm = ShapeMap::new(&b, b.origin());
            for l in 0..=2 * b.r {
                for i in 0..=l {
                    let s = Shape::new(i, l - i);
                    spheres.insert(s.to_string(), json!(sphere(&b, &sm, s)?.len()));
                }
            }
            let pass = links.is_empty() && edges == 0 && connected;
            let mut payload = json!({
                "q": b.q, "r": b.r, "vertices": b.len(), "chambers": b.chambers.len(),
                "bad_links": links, "bad_panels": edges, "connected": connected, "spheres": spheres,
            });
            if *full {
                payload["ball"] = serde_json::to_value(b.to_json()).unwrap();
            }
            Ok(Outcome { payload, pass, dot: Some(b.to_dot()) })
        }
        BuildingCmd::Sphere { ball: a, x, shape } => {
            let b = ball(a)?;
            let x = vertex_arg(&b, *x)?;
            let s = sphere(&b, &ShapeMap::new(&b, x), *shape)?;
            Ok(Outcome { payload: json!({"x": x, "shape": shape, "count": s.len(), "vertices": s}), pass: true, dot: None })
        }
        BuildingCmd::Counts { ball: a } => {
            let b = ball(a)?;
            let o = b.origin();
            let mut basepoints = vec![o];
            for t in [1, 2] {
                basepoints.extend(b.neighbors(o).iter().copied().find(|&v| b.vertex_type(v) == t));
            }
            let n = sphere_constancy(&b, &basepoints)?;
            let shapes = regular_shapes(2 * b.r);
            let y = y_laws(b.ring, &shapes.iter().copied().filter(|s| s.length() <= 4).collect::<Vec<_>>());
            let zs: Vec<Shape> = shapes.into_iter().filter(|s| s.i.max(s.j) + s.length() <= 2 * b.r).collect();
            let z = z_laws(&b, o, &zs)?;
            let pass = n.pass && y.pass && z.pass;
            Ok(Outcome { payload: json!({"spheres": n, "y": y, "z": z, "status": status(pass)}), pass, dot: None })
        }
    }
}

fn report<T: Serialize>(lemma: &str, depth: Value, constants: Value, pass: bool, witnesses: Value, details: &T) -> Outcome {
    Outcome {
        payload: json!({
            "lemma": lemma, "depth": depth, "constants": constants, "status": status(pass),
            "witnesses": witnesses, "details": details,
        }),
        pass,
        dot: None,
    }
}

fn measure_ball(q: u32, r: u32, x: Option<u32>) -> Result<(BuildingBall, u32)> {
    let b = build_ball(q, r)?;
    let x = vertex_arg(&b, x)?;
    Ok((b, x))
}

fn run_measure(cmd: &MeasureCmd) -> Result<Outcome> {
    match cmd {
        MeasureCmd::Table { m } => {
            let (b, x) = measure_ball(m.q, m.r, m.x)?;
            let sm = ShapeMap::new(&b, x);
            let t = measure::visual_table(&b, &sm, m.shape)?;
            let total_one = measure::is_probability(&t);
            let mut refinements = Vec::new();
            let mut pass = total_one;
            for d in [T1, T2] {
                match measure::refinement_check(&b, &sm, m.shape, d) {
                    Ok(r) => {
                        pass &= r.consistent;
                        refinements.push(serde_json::to_value(r).unwrap());
                    }
                    Err(Error::SphereTruncated(s)) => refinements.push(json!({"direction": d, "skipped": s})),
                    Err(e) => return Err(e),
                }
            }
            let mass = t.masses.values().next().map(|v| v.to_string());
            let details = json!({"cells": t.masses.len(), "cell_mass": mass, "total_is_one": total_one, "refinements": refinements});
            Ok(report("visual-measure", json!(m.shape), Value::Null, pass, json!([]), &details))
        }
        MeasureCmd::Rn { m, y } => {
            let (b, x) = measure_ball(m.q, m.r, m.x)?;
            let y = match y {
                Some(y) => vertex_arg(&b, Some(*y))?,
                None => b.neighbors(x)[0],
            };
            let r = measure::rn_check(&b, x, y, m.shape)?;
            Ok(report("radon-nikodym", json!(m.shape), Value::Null, r.pass, json!(r.witnesses), &r))
        }
        MeasureCmd::Beta { m, y, stride } => {
            let (b, x) = measure_ball(m.q, m.r, m.x)?;
            let y = match y {
                Some(y) => vertex_arg(&b, Some(*y))?,
                None => b.neighbors(x)[0],
            };
            let mass = measure::m_mass_of_fx(&b, x, m.shape, *stride)?;
            let cocycle = match measure::beta_cocycle_check(&b, x, y, m.shape, *stride) {
                Ok(c) => Some(c),
                Err(Error::GermTooShallow(_)) => None,
                Err(e) => return Err(e),
            };
            let zero = mass.beta_zero == mass.beta_evaluated && mass.beta_point_independent == mass.beta_evaluated;
            let pass = zero && cocycle.as_ref().is_none_or(|c| c.pass);
            let details = json!({"pairs": mass.pairs, "evaluated": mass.beta_evaluated, "beta_zero": mass.beta_zero,
                "point_independent": mass.beta_point_independent, "cocycle": cocycle});
            Ok(report("beta", json!(m.shape), Value::Null, pass, json!([]), &details))
        }
        MeasureCmd::Mfx { m, stride } => {
            let (b, x) = measure_ball(m.q, m.r, m.x)?;
            let r = measure::m_mass_of_fx(&b, x, m.shape, *stride)?;
            Ok(report("finite-mass", json!(m.shape), Value::Null, r.equal, json!([]), &r))
        }
        MeasureCmd::Pm { m } => {
            let (b, x) = measure_ball(m.q, m.r, m.x)?;
            let sm = ShapeMap::new(&b, x);
            let t = measure::plus_minus_tables(&b, &sm, m.shape)?;
            let pass = measure::is_probability(&t.plus)
                && measure::is_probability(&t.minus)
                && t.plus_mass.is_some()
                && t.minus_mass.is_some();
            let details = json!({
                "plus_cells": t.plus.masses.len(), "minus_cells": t.minus.masses.len(),
                "plus_mass": t.plus_mass.as_ref().map(|v| v.to_string()),
                "minus_mass": t.minus_mass.as_ref().map(|v| v.to_string()),
            });
            Ok(report("plus-minus", json!(m.shape), Value::Null, pass, json!([]), &details))
        }
        MeasureCmd::Disint { q, r, x, shapes } => {
            let (b, x) = measure_ball(*q, *r, *x)?;
            let c = measure::measure_constants(&b, &ShapeMap::new(&b, x))?;
            let mut reports = Vec::new();
            let mut pass = true;
            let mut witnesses = Vec::new();
            for &s in shapes {
                let d = measure::disintegration_check(&b, x, s, Some(c.clone()))?;
                pass &= d.pass;
                witnesses.extend(d.witnesses.iter().copied());
                reports.push(d);
            }
            Ok(report("disintegration", json!(shapes), serde_json::to_value(&c).unwrap(), pass, json!(witnesses), &reports))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Plane(c) => run_plane(c),
        Command::Diffset(c) => run_diffset(c),
        Command::Proj(c) => run_proj(c),
        Command::Lattice(c) => run_lattice(c),
        Command::Building(c) => run_building(c),
        Command::Measure(c) => run_measure(c),
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: String,
    parameters: Vec<String>,
    version: &'a str,
    elapsed_ms: u128,
    outputs: Vec<String>,
    status: &'a str,
}

fn write_file(path: &PathBuf, text: &str) -> std::result::Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Parses `args`, runs the command and returns the process exit code:
/// 0 pass, 1 verification failure, 2 usage or runtime error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let start = Instant::now();
    let result = run(&cli);
    let mut outputs = Vec::new();
    let (code, state) = match result {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.payload).expect("json") + "\n";
            let written = match &cli.out {
                Some(p) => write_file(p, &text).map(|_| outputs.push(p.display().to_string())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            let dot_written = match (&cli.dot, &out.dot) {
                (Some(p), Some(d)) => write_file(p, d).map(|_| outputs.push(p.display().to_string())),
                (Some(_), None) => Err("this command has no DOT output".to_string()),
                _ => Ok(()),
            };
            match written.and(dot_written) {
                Ok(()) if out.pass => (0, "pass"),
                Ok(()) => (1, "fail"),
                Err(msg) => {
                    eprintln!("error: {msg}");
                    (2, "error")
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            (2, "error")
        }
    };
    if let Some(path) = &cli.manifest {
        let strs: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
        let command = strs.iter().skip(1).filter(|s| !s.starts_with('-')).take(2).cloned().collect::<Vec<_>>().join(" ");
        let m = Manifest {
            command,
            parameters: strs.into_iter().skip(1).collect(),
            version: env!("CARGO_PKG_VERSION"),
            elapsed_ms: start.elapsed().as_millis(),
            outputs,
            status: state,
        };
        if let Err(msg) = write_file(path, &(serde_json::to_string_pretty(&m).unwrap() + "\n")) {
            eprintln!("error: {msg}");
            return 2;
        }
    }
    code
}
