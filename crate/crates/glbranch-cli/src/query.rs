//! Command definitions, argument resolution and evaluation to JSON.

use clap::{Subcommand, ValueEnum};
use serde_json::{json, Value};

use glbranch::calculus::{
    derivative_seq, highest, integral_seq, is_generic, langlands_to_zelevinsky, mw_involution,
    zelevinsky_to_langlands,
};
use glbranch::commutation::{is_minimal, minimize, strongly_commutative_multi};
use glbranch::invariants::{eta, hd, mx, removal, removal_multi};
use glbranch::oracle::consistency_suite;
use glbranch::pieri::{pieri_table, simple_quotients};
use glbranch::relevance::{branch, relevant, smallest_derivative_index};
use glbranch::text::{self, parse_multisegment, parse_rep, parse_segment, parse_segments};
use glbranch::{IrrRep, Multisegment, Result, Segment, Side};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        }
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Right => "right",
        Side::Left => "left",
    }
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Parse a segment, multisegment or representation and print its canonical form
    Parse { text: String },
    /// Derivative by a segment or by a multisegment (ascending order on the right)
    Derive {
        rep: String,
        segs: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Integral by a segment or by a multisegment
    Integrate {
        rep: String,
        segs: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Highest derivative multisegment
    Hd {
        rep: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// The η vector of a representation on a frame segment
    Eta {
        rep: String,
        frame: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Maximal multisegment of a representation at a segment
    Mx {
        rep: String,
        seg: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Removal process of a segment or multisegment from a multisegment
    Removal { segs: String, h: String },
    /// Strong RdLi-commutativity of (m, n, rep), with the full trace
    Commute { m: String, n: String, rep: String },
    /// Minimality of a derivative multisegment, with its minimization
    Minimal {
        rep: String,
        m: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Relevance of a pair with the minimal witness
    Relevant { pi1: String, pi2: String },
    /// Branching decision for a representation and one of rank one less
    Branch { pi: String, pip: String },
    /// Supporting layer index of a strongly commutative triple
    Layer { m: String, n: String, rep: String },
    /// Simple quotients of the Bernstein-Zelevinsky derivatives
    Pieri {
        rep: String,
        #[arg(long)]
        index: Option<u64>,
    },
    /// Convert between Zelevinsky and Langlands multisegments
    Involute { mult: String },
    /// Run the law checks on a seeded corpus sample
    Selfcheck,
}

/// Flags that change what a query computes or prints.
#[derive(Clone, Debug)]
pub struct Context {
    pub langlands: bool,
    pub seed: u64,
    pub max_points: usize,
}

impl Context {
    /// Bare `{...}` arguments in representation slots are Langlands
    /// parameters under `--langlands`; `Z{...}` and `St{...}` always parse.
    fn rep(&self, text: &str) -> Result<IrrRep> {
        if self.langlands && text.trim_start().starts_with('{') {
            Ok(IrrRep::new(langlands_to_zelevinsky(&parse_multisegment(text)?)))
        } else {
            parse_rep(text)
        }
    }

    fn show(&self, pi: &IrrRep) -> String {
        if self.langlands {
            format!("St{}", zelevinsky_to_langlands(pi.zmult()))
        } else {
            pi.to_string()
        }
    }
}

/// A query with every argument parsed into its canonical value.
pub enum Resolved {
    Parse(text::Value),
    Derive(IrrRep, Multisegment, Side),
    Integrate(IrrRep, Multisegment, Side),
    Hd(IrrRep, Side),
    Eta(IrrRep, Segment, Side),
    Mx(IrrRep, Segment, Side),
    Removal(Multisegment, Multisegment),
    Commute(Multisegment, Multisegment, IrrRep),
    Minimal(IrrRep, Multisegment, Side),
    Relevant(IrrRep, IrrRep),
    Branch(IrrRep, IrrRep),
    Layer(Multisegment, Multisegment, IrrRep),
    Pieri(IrrRep, Option<u64>),
    Involute(Multisegment),
    Selfcheck,
}

pub fn resolve(cmd: &Command, ctx: &Context) -> Result<Resolved> {
    Ok(match cmd {
        Command::Parse { text } => {
            let v = if ctx.langlands && text.trim_start().starts_with('{') {
                text::Value::Rep(ctx.rep(text)?)
            } else {
                text::parse_value(text)?
            };
            Resolved::Parse(v)
        }
        Command::Derive { rep, segs, side } => Resolved::Derive(ctx.rep(rep)?, parse_segments(segs)?, (*side).into()),
        Command::Integrate { rep, segs, side } => {
            Resolved::Integrate(ctx.rep(rep)?, parse_segments(segs)?, (*side).into())
        }
        Command::Hd { rep, side } => Resolved::Hd(ctx.rep(rep)?, (*side).into()),
        Command::Eta { rep, frame, side } => Resolved::Eta(ctx.rep(rep)?, parse_segment(frame)?, (*side).into()),
        Command::Mx { rep, seg, side } => Resolved::Mx(ctx.rep(rep)?, parse_segment(seg)?, (*side).into()),
        Command::Removal { segs, h } => Resolved::Removal(parse_segments(segs)?, parse_multisegment(h)?),
        Command::Commute { m, n, rep } => Resolved::Commute(parse_segments(m)?, parse_segments(n)?, ctx.rep(rep)?),
        Command::Minimal { rep, m, side } => Resolved::Minimal(ctx.rep(rep)?, parse_segments(m)?, (*side).into()),
        Command::Relevant { pi1, pi2 } => Resolved::Relevant(ctx.rep(pi1)?, ctx.rep(pi2)?),
        Command::Branch { pi, pip } => Resolved::Branch(ctx.rep(pi)?, ctx.rep(pip)?),
        Command::Layer { m, n, rep } => Resolved::Layer(parse_segments(m)?, parse_segments(n)?, ctx.rep(rep)?),
        Command::Pieri { rep, index } => Resolved::Pieri(ctx.rep(rep)?, *index),
        Command::Involute { mult } => Resolved::Involute(parse_multisegment(mult)?),
        Command::Selfcheck => Resolved::Selfcheck,
    })
}

impl Resolved {
    pub fn name(&self) -> &'static str {
        match self {
            Resolved::Parse(_) => "parse",
            Resolved::Derive(..) => "derive",
            Resolved::Integrate(..) => "integrate",
            Resolved::Hd(..) => "hd",
            Resolved::Eta(..) => "eta",
            Resolved::Mx(..) => "mx",
            Resolved::Removal(..) => "removal",
            Resolved::Commute(..) => "commute",
            Resolved::Minimal(..) => "minimal",
            Resolved::Relevant(..) => "relevant",
            Resolved::Branch(..) => "branch",
            Resolved::Layer(..) => "layer",
            Resolved::Pieri(..) => "pieri",
            Resolved::Involute(_) => "involute",
            Resolved::Selfcheck => "selfcheck",
        }
    }

    /// Canonical text of the query. Inputs are printed in canonical `Z` form,
    /// so notation variants of the same query coincide.
    pub fn canonical(&self, ctx: &Context) -> String {
        let body = match self {
            Resolved::Parse(v) => v.to_string(),
            Resolved::Derive(p, m, s) | Resolved::Integrate(p, m, s) | Resolved::Minimal(p, m, s) => {
                format!("{p} {m} {}", side_name(*s))
            }
            Resolved::Hd(p, s) => format!("{p} {}", side_name(*s)),
            Resolved::Eta(p, d, s) | Resolved::Mx(p, d, s) => format!("{p} {d} {}", side_name(*s)),
            Resolved::Removal(m, h) => format!("{m} {h}"),
            Resolved::Commute(m, n, p) | Resolved::Layer(m, n, p) => format!("{m} {n} {p}"),
            Resolved::Relevant(a, b) | Resolved::Branch(a, b) => format!("{a} {b}"),
            Resolved::Pieri(p, i) => format!("{p} {}", i.map(|i| i.to_string()).unwrap_or_else(|| "*".into())),
            Resolved::Involute(m) => m.to_string(),
            Resolved::Selfcheck => format!("seed={} max_points={}", ctx.seed, ctx.max_points),
        };
        format!("{} {body} langlands={}", self.name(), ctx.langlands)
    }

    pub fn run(&self, ctx: &Context) -> Result<Value> {
        let show = |p: &IrrRep| ctx.show(p);
        Ok(match self {
            Resolved::Parse(v) => match v {
                text::Value::Segment(s) => json!({
                    "kind": "segment",
                    "value": s.to_string(),
                    "line": s.line().name(),
                    "line_size": s.line().size(),
                    "relative_length": s.rel_len(),
                    "absolute_length": s.abs_len(),
                }),
                text::Value::Multisegment(m) => json!({
                    "kind": "multisegment",
                    "value": m.to_string(),
                    "segments": m.len(),
                    "absolute_length": m.abs_len(),
                }),
                text::Value::Rep(p) => json!({
                    "kind": "rep",
                    "value": show(p),
                    "zelevinsky": p.to_string(),
                    "langlands": format!("St{}", zelevinsky_to_langlands(p.zmult())),
                    "segments": p.zmult().len(),
                    "rank": p.rank(),
                    "level": p.level(),
                    "generic": is_generic(p),
                }),
            },
            Resolved::Derive(p, m, s) => json!({
                "rep": show(p),
                "by": m.to_string(),
                "side": side_name(*s),
                "result": derivative_seq(p, m, *s).map(|r| show(&r)),
            }),
            Resolved::Integrate(p, m, s) => json!({
                "rep": show(p),
                "by": m.to_string(),
                "side": side_name(*s),
                "result": show(&integral_seq(p, m, *s)),
            }),
            Resolved::Hd(p, s) => {
                let (level, top) = highest(p, *s, false);
                json!({
                    "rep": show(p),
                    "side": side_name(*s),
                    "hd": hd(p, *s).to_string(),
                    "highest": show(&top),
                    "level": level,
                })
            }
            Resolved::Eta(p, d, s) => {
                let e = eta(p, d, *s);
                json!({ "rep": show(p), "frame": d.to_string(), "side": side_name(*s), "eta": e.comps, "abs": e.abs() })
            }
            Resolved::Mx(p, d, s) => {
                json!({ "rep": show(p), "segment": d.to_string(), "side": side_name(*s), "mx": mx(p, d, *s).to_string() })
            }
            Resolved::Removal(m, h) => {
                let mut out = json!({ "by": m.to_string(), "h": h.to_string(), "result": removal_multi(m, h)?.to_string() });
                if let [d] = m.segs() {
                    let (_, seq) = removal(d, h)?;
                    out["sequence"] = json!(seq.iter().map(|s| s.to_string()).collect::<Vec<_>>());
                }
                out
            }
            Resolved::Commute(m, n, p) => {
                let t = strongly_commutative_multi(m, n, p)?;
                let trace: Vec<Value> = t
                    .trace
                    .iter()
                    .map(|e| {
                        json!({
                            "i": e.i,
                            "j": e.j,
                            "d": e.d.to_string(),
                            "dp": e.dp.to_string(),
                            "rep": show(&e.rep),
                            "eta_before": e.eta_before.comps,
                            "eta_after": e.eta_after.comps,
                            "ok": e.ok,
                        })
                    })
                    .collect();
                json!({ "m": m.to_string(), "n": n.to_string(), "rep": show(p), "verdict": t.verdict, "trace": trace })
            }
            Resolved::Minimal(p, m, s) => json!({
                "rep": show(p),
                "m": m.to_string(),
                "side": side_name(*s),
                "minimal": is_minimal(p, m, *s)?,
                "minimized": minimize(p, m, *s)?.to_string(),
            }),
            Resolved::Relevant(a, b) => relevance_json(ctx, a, b),
            Resolved::Branch(a, b) => {
                branch(a, b)?;
                relevance_json(ctx, a, b)
            }
            Resolved::Layer(m, n, p) => json!({
                "m": m.to_string(),
                "n": n.to_string(),
                "rep": show(p),
                "i_star": smallest_derivative_index(m, n, p)?,
            }),
            Resolved::Pieri(p, index) => {
                let rows: Vec<(u64, Vec<(IrrRep, Multisegment)>)> = match index {
                    Some(i) => vec![(*i, simple_quotients(p, *i)?.into_iter().collect())],
                    None => pieri_table(p)?.into_iter().map(|(i, r)| (i, r.into_iter().collect())).collect(),
                };
                let rows: Vec<Value> = rows
                    .into_iter()
                    .map(|(i, r)| {
                        let q: Vec<Value> =
                            r.iter().map(|(t, m)| json!({ "rep": show(t), "witness": m.to_string() })).collect();
                        json!({ "i": i, "quotients": q })
                    })
                    .collect();
                json!({ "rep": show(p), "rows": rows })
            }
            Resolved::Involute(m) => json!({ "input": m.to_string(), "result": mw_involution(m).to_string() }),
            Resolved::Selfcheck => {
                let r = consistency_suite(ctx.seed, ctx.max_points);
                let checks: Vec<Value> = r
                    .checks
                    .iter()
                    .map(|c| json!({ "name": c.name, "cases": c.cases, "failures": c.failures, "examples": c.examples }))
                    .collect();
                json!({ "seed": r.seed, "max_points": r.max_points, "passed": r.passed(), "checks": checks })
            }
        })
    }
}

fn relevance_json(ctx: &Context, a: &IrrRep, b: &IrrRep) -> Value {
    let r = relevant(a, b);
    let (m, n) = if r.relevant {
        (Some(r.witness_m.to_string()), Some(r.witness_n.to_string()))
    } else {
        (None, None)
    };
    json!({
        "relevant": r.relevant,
        "i_star": r.i_star,
        "m": m,
        "n": n,
        "target": r.target.as_ref().map(|t| ctx.show(t)),
    })
}

/// Whether a result counts as a mathematical "false" or "null".
pub fn is_negative(name: &str, v: &Value) -> bool {
    match name {
        "selfcheck" => v["passed"] == json!(false),
        "derive" => v["result"].is_null(),
        "commute" => v["verdict"] == json!(false),
        "minimal" => v["minimal"] == json!(false),
        "relevant" | "branch" => v["relevant"] == json!(false),
        _ => false,
    }
}
