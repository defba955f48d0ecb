//! Front end for `plconj`: argument documents in, deterministic result documents out.
//!
//! Exit codes: 0 yes/ok, 1 provably no, 2 malformed input (or an internal failure, which is
//! reported the same way rather than as a decision).

pub mod doc;

use std::fmt;

use plconj_core::central::{all_roots, centralizer, intersect_centralizers, nth_root_detailed, reduce_to_two};
use plconj_core::conj::{conjugate_detailed, verify};
use plconj_core::random::{random_element, Shape};
use plconj_core::reach::reach;
use plconj_core::simconj::simultaneous_conjugate_detailed;
use plconj_core::PLMap;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use doc::{descriptor, descriptor_json, element, element_json, fixed_set_json, integer, obstruction_json, rat, tuple, tuple_json};

pub const COMMANDS: &[&str] = &[
    "eval", "compose", "invert", "power", "fixedset", "reach", "conjugate", "simconj", "roots",
    "centralizer", "intersect", "reduce2", "verify", "sample",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<plconj_core::Error> for InputError {
    fn from(e: plconj_core::Error) -> Self {
        InputError(e.to_string())
    }
}

/// The outcome of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub exit: i32,
    pub doc: Value,
}

impl Report {
    /// Plain-text rendering: the answer, then one `key: value` line per result field.
    pub fn text(&self) -> String {
        let o = self.doc.as_object().expect("reports are objects");
        let mut out = String::new();
        out.push_str(o["answer"].as_str().unwrap_or("?"));
        out.push('\n');
        for (k, v) in o {
            if matches!(k.as_str(), "answer" | "command" | "input") {
                continue;
            }
            match v {
                Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                _ => out.push_str(&format!("{k}: {v}\n")),
            }
        }
        out
    }
}

struct Out {
    command: String,
    input: Map<String, Value>,
    fields: Map<String, Value>,
}

impl Out {
    fn new(command: &str) -> Out {
        Out { command: command.into(), input: Map::new(), fields: Map::new() }
    }

    fn input(mut self, k: &str, v: Value) -> Out {
        self.input.insert(k.into(), v);
        self
    }

    fn field(mut self, k: &str, v: Value) -> Out {
        self.fields.insert(k.into(), v);
        self
    }

    fn finish(self, answer: &str, exit: i32) -> Report {
        let mut m = self.fields;
        m.insert("command".into(), self.command.into());
        m.insert("answer".into(), answer.into());
        m.insert("input".into(), Value::Object(self.input));
        Report { exit, doc: Value::Object(m) }
    }

    fn ok(self) -> Report {
        self.finish("ok", 0)
    }

    fn yes(self) -> Report {
        self.finish("yes", 0)
    }

    fn no(self, obstruction: Value) -> Report {
        self.field("obstruction", obstruction).finish("no", 1)
    }
}

fn arity(command: &str, args: &[Value], lo: usize, hi: usize) -> Result<(), InputError> {
    if args.len() < lo || args.len() > hi {
        let want = if lo == hi { lo.to_string() } else { format!("{lo} to {hi}") };
        return Err(InputError(format!("{command} takes {want} arguments, got {}", args.len())));
    }
    Ok(())
}

/// Runs `command` on already-decoded arguments. `seed` only matters for `sample`.
pub fn run(command: &str, args: &[Value], seed: u64) -> Result<Report, InputError> {
    let out = Out::new(command);
    let a = |i: usize| &args[i];
    match command {
        "eval" => {
            arity(command, args, 2, 2)?;
            let (f, t) = (element(a(0))?, rat(a(1))?);
            let v = f.eval(&t)?;
            Ok(out.input("f", element_json(&f)).input("t", t.to_string().into()).field("value", v.to_string().into()).ok())
        }
        "compose" => {
            arity(command, args, 2, 2)?;
            let (f, g) = (element(a(0))?, element(a(1))?);
            let h = f.compose(&g)?;
            Ok(out.input("f", element_json(&f)).input("g", element_json(&g)).field("result", element_json(&h)).ok())
        }
        "invert" => {
            arity(command, args, 1, 1)?;
            let f = element(a(0))?;
            Ok(out.input("f", element_json(&f)).field("result", element_json(&f.invert())).ok())
        }
        "power" => {
            arity(command, args, 2, 2)?;
            let (f, n) = (element(a(0))?, integer(a(1))?);
            Ok(out.input("f", element_json(&f)).input("n", n.into()).field("result", element_json(&f.power(n))).ok())
        }
        "fixedset" => {
            arity(command, args, 1, 1)?;
            let f = element(a(0))?;
            let d = f.fixed_set();
            let bd: Vec<String> = d.dyadic_boundary().iter().map(|p| p.to_string()).collect();
            Ok(out
                .input("f", element_json(&f))
                .field("components", fixed_set_json(&d))
                .field("dyadic_boundary", json!(bd))
                .ok())
        }
        "reach" => {
            arity(command, args, 2, 2)?;
            let (x, y) = (rat(a(0))?, rat(a(1))?);
            let out = out.input("a", x.to_string().into()).input("b", y.to_string().into());
            Ok(match reach(&x, &y)? {
                Ok(g) => out.field("witness", element_json(&g)).yes(),
                Err(o) => out.no(obstruction_json(&o)),
            })
        }
        "conjugate" => {
            arity(command, args, 2, 2)?;
            let (y, z) = (element(a(0))?, element(a(1))?);
            let out = out.input("y", element_json(&y)).input("z", element_json(&z));
            Ok(match conjugate_detailed(&y, &z)? {
                Ok(w) => out.field("witness", element_json(&w.conjugator)).yes(),
                Err(o) => out.no(obstruction_json(&o)),
            })
        }
        "simconj" => {
            arity(command, args, 2, 2)?;
            let (xs, ys) = (tuple(a(0))?, tuple(a(1))?);
            let out = out.input("xs", tuple_json(&xs)).input("ys", tuple_json(&ys));
            Ok(match simultaneous_conjugate_detailed(&xs, &ys)? {
                Ok(g) => out.field("witness", element_json(&g)).yes(),
                Err(o) => out.no(obstruction_json(&o)),
            })
        }
        "roots" => {
            arity(command, args, 1, 2)?;
            let x = element(a(0))?;
            let out = out.input("x", element_json(&x));
            if args.len() == 2 {
                let n = integer(a(1))?;
                let n = u64::try_from(n).map_err(|_| InputError(format!("root index must be positive, got {n}")))?;
                let out = out.input("n", n.into());
                return Ok(match nth_root_detailed(&x, n)? {
                    Ok(h) => out.field("witness", element_json(&h)).yes(),
                    Err(o) => out.no(obstruction_json(&o)),
                });
            }
            let roots: Vec<Value> =
                all_roots(&x)?.iter().map(|(n, h)| json!({ "n": n, "root": element_json(h) })).collect();
            Ok(out.field("roots", Value::Array(roots)).ok())
        }
        "centralizer" => {
            arity(command, args, 1, 1)?;
            let x = element(a(0))?;
            Ok(out.input("x", element_json(&x)).field("descriptor", descriptor_json(&centralizer(&x)?)).ok())
        }
        "intersect" => {
            arity(command, args, 1, 1)?;
            let xs = tuple(a(0))?;
            let d = intersect_centralizers(&xs)?;
            Ok(out.input("xs", tuple_json(&xs)).field("descriptor", descriptor_json(&d)).ok())
        }
        "reduce2" => {
            arity(command, args, 1, 1)?;
            let d = match a(0) {
                Value::Object(o) if o.contains_key("cells") => descriptor(a(0))?,
                v => intersect_centralizers(&tuple(v)?)?,
            };
            let (w1, w2) = reduce_to_two(&d)?;
            Ok(out.input("descriptor", descriptor_json(&d)).field("pair", tuple_json(&[w1, w2])).ok())
        }
        "verify" => {
            arity(command, args, 1, 3)?;
            let ok = match args.len() {
                3 => {
                    let g = element(a(2))?;
                    let (ys, zs) = match (a(0), a(1)) {
                        (Value::Array(p), Value::Array(q)) if is_tuple(p) && is_tuple(q) => (tuple(a(0))?, tuple(a(1))?),
                        _ => (vec![element(a(0))?], vec![element(a(1))?]),
                    };
                    if ys.len() != zs.len() {
                        return Err(plconj_core::Error::LengthMismatch(ys.len(), zs.len()).into());
                    }
                    ys.iter().zip(&zs).all(|(y, z)| verify(y, z, &g))
                }
                1 => verify_report(a(0))?,
                _ => return Err(InputError("verify takes y z g, or a single result document".into())),
            };
            let out = out.field("verified", ok.into());
            Ok(if ok { out.yes() } else { out.no(json!({ "kind": "verification", "message": "witness does not verify" })) })
        }
        "sample" => {
            arity(command, args, 0, 1)?;
            let k = if args.is_empty() { 1 } else { integer(a(0))? };
            if !(1..=16).contains(&k) {
                return Err(InputError(format!("tuple size must be between 1 and 16, got {k}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let small = Shape { max_leaves: 7, max_depth: 6 };
            let xs: Vec<PLMap> = (0..k).map(|_| random_element(&mut rng, small)).collect();
            let g = random_element(&mut rng, Shape::default());
            let ys: Vec<PLMap> = xs.iter().map(|x| x.conjugate_by(&g)).collect::<Result<_, _>>()?;
            let args = if k == 1 {
                json!([element_json(&xs[0]), element_json(&ys[0])])
            } else {
                json!([tuple_json(&xs), tuple_json(&ys)])
            };
            Ok(out.input("seed", seed.into()).input("k", k.into()).field("args", args).field("planted", element_json(&g)).ok())
        }
        _ => Err(InputError(format!("unknown command {command:?}; expected one of {}", COMMANDS.join(", ")))),
    }
}

/// A node list is a non-empty array of string pairs; any other array is a tuple of elements.
fn is_tuple(items: &[Value]) -> bool {
    items.is_empty()
        || !items.iter().all(|i| matches!(i.as_array().map(Vec::as_slice), Some([Value::String(_), Value::String(_)])))
}

/// Re-checks a result document: witnesses are verified directly, everything else is recomputed.
fn verify_report(report: &Value) -> Result<bool, InputError> {
    let o = report.as_object().ok_or_else(|| InputError("expected a result document".into()))?;
    let get = |k: &str| o.get(k).ok_or_else(|| InputError(format!("result document has no {k:?}")));
    let command = get("command")?.as_str().unwrap_or_default();
    let input = get("input")?;
    let inp = |k: &str| input.get(k).ok_or_else(|| InputError(format!("result input has no {k:?}")));
    if get("answer")?.as_str() == Some("no") {
        return Err(InputError("a NO answer carries no witness to verify".into()));
    }
    Ok(match command {
        "reach" => element(get("witness")?)?.eval(&rat(inp("a")?)?)? == rat(inp("b")?)?,
        "conjugate" => verify(&element(inp("y")?)?, &element(inp("z")?)?, &element(get("witness")?)?),
        "simconj" => {
            let (xs, ys, g) = (tuple(inp("xs")?)?, tuple(inp("ys")?)?, element(get("witness")?)?);
            xs.len() == ys.len() && xs.iter().zip(&ys).all(|(x, y)| verify(x, y, &g))
        }
        "roots" => {
            let x = element(inp("x")?)?;
            match input.get("n") {
                Some(n) => element(get("witness")?)?.power(integer(n)?) == x,
                None => {
                    let roots = get("roots")?.as_array().ok_or_else(|| InputError("roots is not a list".into()))?;
                    let mut ok = true;
                    for r in roots {
                        ok &= element(&r["root"])?.power(integer(&r["n"])?) == x;
                    }
                    ok && run(command, &[element_json(&x)], 0)?.doc == *report
                }
            }
        }
        "reduce2" => {
            let d = descriptor(inp("descriptor")?)?;
            intersect_centralizers(&tuple(get("pair")?)?)? == d
        }
        "verify" | "sample" => return Err(InputError(format!("nothing to verify in a {command} document"))),
        _ => {
            let args: Vec<Value> = match command {
                "eval" => vec![inp("f")?.clone(), inp("t")?.clone()],
                "compose" => vec![inp("f")?.clone(), inp("g")?.clone()],
                "invert" | "fixedset" => vec![inp("f")?.clone()],
                "power" => vec![inp("f")?.clone(), inp("n")?.clone()],
                "centralizer" => vec![inp("x")?.clone()],
                "intersect" => vec![inp("xs")?.clone()],
                _ => return Err(InputError(format!("unknown command {command:?} in result document"))),
            };
            run(command, &args, 0)?.doc == *report
        }
    })
}
