use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};
use soergel_core::bimodule::{
    decompose_srs, graded_rank, image_graded_rank, srs_idempotent, variables_for, BSMorphism,
};
use soergel_core::leaves::{double_leaf_count, enumerate_leaves, leaf_polynomials};
use soergel_core::rex::{build_rex, forking_check, Strategy};
use soergel_core::{
    CoxeterSpec, CoxeterSystem, Element, Error, Gen, HeckeAlgebra, HeckeElt, LaurentPoly, Result,
    Word,
};

use crate::cache::Cache;
use crate::output::Output;
use crate::{BsCmd, Cli, Command, CoxeterCmd, HeckeCmd, LeavesCmd, RexCmd, SystemArg};

pub fn run(cli: &Cli) -> Result<String> {
    let out = match &cli.command {
        Command::Coxeter(c) => coxeter(c)?,
        Command::Hecke(c) => hecke(cli, c)?,
        Command::Leaves(c) => leaves(c)?,
        Command::Bs(c) => bs(c)?,
        Command::Rex(c) => match c {
            RexCmd::Export {
                sys,
                element,
                dot: true,
            } => {
                let system = system(sys)?;
                let x = element_arg(&system, element)?;
                return Ok(build_rex(&system, &x)?.to_dot(system.rank()));
            }
            c => rex(c)?,
        },
    };
    Ok(out.render(cli.format))
}

fn system(arg: &SystemArg) -> Result<CoxeterSystem> {
    CoxeterSystem::new(arg.system.parse::<CoxeterSpec>()?)
}

fn word_arg(system: &CoxeterSystem, text: &str) -> Result<Word> {
    let w: Word = text.parse()?;
    system.evaluate(&w)?;
    Ok(w)
}

fn element_arg(system: &CoxeterSystem, text: &str) -> Result<Element> {
    system.evaluate(&text.parse()?)
}

fn gen_arg(system: &CoxeterSystem, text: &str) -> Result<Gen> {
    let t = text.trim();
    let s: Gen = t
        .strip_prefix('s')
        .unwrap_or(t)
        .parse()
        .map_err(|_| Error::Parse(format!("bad generator `{t}`")))?;
    system.generator(s)?;
    Ok(s)
}

fn name(x: &Element) -> String {
    x.canonical_word().to_string()
}

fn expansion(h: &HeckeElt) -> Output {
    let rows = h
        .terms()
        .map(|(y, p)| vec![name(y), p.to_string()])
        .collect();
    Output::table(h.to_json(), vec!["element", "coefficient"], rows).with_text(format!("{h}\n"))
}

fn coxeter(cmd: &CoxeterCmd) -> Result<Output> {
    match cmd {
        CoxeterCmd::Info(sys) => {
            let system = system(sys)?;
            let matrix: Vec<Vec<Value>> = system
                .coxeter_matrix()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|m| m.map_or(json!("inf"), |m| json!(m)))
                        .collect()
                })
                .collect();
            let order = system.order().map_or("inf".to_string(), |o| o.to_string());
            let longest = system.longest_element().map(|w| name(&w));
            let json = json!({
                "system": system.spec().to_string(),
                "rank": system.rank(),
                "order": order,
                "finite": system.is_finite(),
                "coxeter_matrix": matrix,
                "longest_element": longest,
            });
            let matrix_text: Vec<String> = matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.to_string().trim_matches('"').to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            let rows = vec![
                vec!["system".into(), system.spec().to_string()],
                vec!["rank".into(), system.rank().to_string()],
                vec!["order".into(), order],
                vec!["coxeter_matrix".into(), matrix_text.join("; ")],
                vec![
                    "longest_element".into(),
                    longest.unwrap_or_else(|| "none".into()),
                ],
            ];
            Ok(Output::table(json, vec!["property", "value"], rows))
        }
        CoxeterCmd::Elements { sys, max_length } => {
            let system = system(sys)?;
            let rows: Vec<Vec<String>> = system
                .elements_up_to(*max_length)?
                .map(|x| vec![name(&x), x.length().to_string()])
                .collect();
            let json = json!(rows
                .iter()
                .map(|r| json!({"element": r[0], "length": r[1].parse::<usize>().unwrap()}))
                .collect::<Vec<_>>());
            Ok(Output::table(json, vec!["element", "length"], rows))
        }
        CoxeterCmd::Bruhat { sys, x, y } => {
            let system = system(sys)?;
            let (a, b) = (element_arg(&system, x)?, element_arg(&system, y)?);
            let relation = if a == b {
                "equal"
            } else if system.bruhat_leq(&a, &b)? {
                "less"
            } else if system.bruhat_leq(&b, &a)? {
                "greater"
            } else {
                "incomparable"
            };
            let json = json!({"x": name(&a), "y": name(&b), "relation": relation});
            Ok(Output::table(
                json,
                vec!["x", "y", "relation"],
                vec![vec![name(&a), name(&b), relation.into()]],
            )
            .with_text(format!("{relation}\n")))
        }
    }
}

/// An algebra seeded from the cache when one is given.
fn algebra(cli: &Cli, system: CoxeterSystem) -> Result<(HeckeAlgebra, Option<Cache>)> {
    let hecke = HeckeAlgebra::new(system);
    let Some(path) = &cli.cache else {
        return Ok((hecke, None));
    };
    let cache = Cache::open(path)?;
    if cli.verify {
        let n = cache.verify(&system)?;
        eprintln!("verified {n} cached records for {}", system.spec());
    }
    cache.seed(&hecke)?;
    Ok((hecke, Some(cache)))
}

fn hecke(cli: &Cli, cmd: &HeckeCmd) -> Result<Output> {
    match cmd {
        HeckeCmd::Mult { sys, basis, x, y } => {
            let system = system(sys)?;
            let (a, b) = (element_arg(&system, x)?, element_arg(&system, y)?);
            let (hecke, mut cache) = algebra(cli, system)?;
            let product = if basis == "std" {
                hecke.mult(&hecke.h_std(&a)?, &hecke.h_std(&b)?)?
            } else {
                let p = hecke.mult(&*hecke.kl_basis(&a)?, &*hecke.kl_basis(&b)?)?;
                if let Some(c) = cache.as_mut() {
                    c.store(&hecke, &[a, b])?;
                }
                p
            };
            Ok(expansion(&product))
        }
        HeckeCmd::Kl {
            sys,
            element,
            descent,
        } => {
            let system = system(sys)?;
            let x = element_arg(&system, element)?;
            let (hecke, mut cache) = algebra(cli, system)?;
            let b = match descent {
                Some(s) => Arc::new(hecke.kl_basis_with_descent(&x, gen_arg(&system, s)?)?),
                None => hecke.kl_basis(&x)?,
            };
            if let Some(c) = cache.as_mut() {
                c.store(&hecke, &[x])?;
            }
            Ok(expansion(&b))
        }
        HeckeCmd::KlTable { sys, max_length } => {
            let system = system(sys)?;
            let elements: Vec<Element> = system.elements_up_to(*max_length)?.collect();
            let (hecke, mut cache) = algebra(cli, system)?;
            let mut rows = Vec::new();
            let mut records = Vec::new();
            for x in &elements {
                for (y, p) in hecke.kl_basis(x)?.terms() {
                    let norm = hecke.kl_coefficient_normalized(y, x)?;
                    records.push(json!({"x": name(x), "y": name(y), "h": p.to_string(), "normalized": norm.to_string()}));
                    rows.push(vec![name(x), name(y), p.to_string(), norm.to_string()]);
                }
            }
            if let Some(c) = cache.as_mut() {
                c.store(&hecke, &elements)?;
            }
            Ok(Output::table(
                json!(records),
                vec!["x", "y", "h", "normalized"],
                rows,
            ))
        }
        HeckeCmd::Dyer { sys, gen, element } => {
            let system = system(sys)?;
            let s = gen_arg(&system, gen)?;
            let x = element_arg(&system, element)?;
            let hecke = HeckeAlgebra::new(system);
            let terms = hecke.dyer_mult(s, &x)?;
            let rows: Vec<Vec<String>> = terms
                .iter()
                .map(|(y, p)| vec![name(y), p.to_string()])
                .collect();
            let json: serde_json::Map<String, Value> = terms
                .iter()
                .map(|(y, p)| (name(y), json!(p.to_string())))
                .collect();
            let text = terms
                .iter()
                .map(|(y, p)| {
                    if *p == LaurentPoly::one() {
                        format!("b[{}]", name(y))
                    } else {
                        format!("({p})*b[{}]", name(y))
                    }
                })
                .collect::<Vec<_>>()
                .join(" + ");
            Ok(
                Output::table(Value::Object(json), vec!["element", "coefficient"], rows)
                    .with_text(format!("{text}\n")),
            )
        }
        HeckeCmd::Star { sys, x, y } => {
            let system = system(sys)?;
            let (a, b) = (element_arg(&system, x)?, element_arg(&system, y)?);
            let (hecke, _) = algebra(cli, system)?;
            let star = hecke.star_product(&*hecke.kl_basis(&a)?, &*hecke.kl_basis(&b)?)?;
            Ok(expansion(&star))
        }
    }
}

fn leaves(cmd: &LeavesCmd) -> Result<Output> {
    match cmd {
        LeavesCmd::Enum { sys, word } => {
            let system = system(sys)?;
            let w = word_arg(&system, word)?;
            let leaves = enumerate_leaves(&system, &w)?;
            let rows = leaves
                .iter()
                .map(|l| {
                    vec![
                        l.subexpr.bit_string(),
                        l.labels
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                        name(&l.target),
                        l.degree.to_string(),
                    ]
                })
                .collect();
            let json = json!(leaves.iter().map(|l| l.to_json()).collect::<Vec<_>>());
            Ok(Output::table(
                json,
                vec!["bits", "labels", "target", "degree"],
                rows,
            ))
        }
        LeavesCmd::Homcount { sys, word1, word2 } => {
            let system = system(sys)?;
            let (w1, w2) = (word_arg(&system, word1)?, word_arg(&system, word2)?);
            let lp1 = leaf_polynomials(&system, &w1)?;
            let lp2 = leaf_polynomials(&system, &w2)?;
            let mut rows = Vec::new();
            let mut per_target = Vec::new();
            for (z, p) in &lp1 {
                if let Some(q) = lp2.get(z) {
                    let prod = p * q;
                    per_target.push(json!({"target": name(z), "upper": p.to_string(), "lower": q.to_string(), "product": prod.to_string()}));
                    rows.push(vec![
                        name(z),
                        p.to_string(),
                        q.to_string(),
                        prod.to_string(),
                    ]);
                }
            }
            let count = double_leaf_count(&system, &w1, &w2)?;
            rows.push(vec![
                "total".into(),
                String::new(),
                String::new(),
                count.to_string(),
            ]);
            let json = json!({"word1": w1.to_string(), "word2": w2.to_string(), "targets": per_target, "count": count.to_string()});
            Ok(Output::table(
                json,
                vec!["target", "upper", "lower", "product"],
                rows,
            ))
        }
    }
}

fn bs(cmd: &BsCmd) -> Result<Output> {
    match cmd {
        BsCmd::Rank { sys, word } => {
            let system = system(sys)?;
            variables_for(system.spec())?;
            let w = word_arg(&system, word)?;
            let rank = graded_rank(&w);
            let json = json!({"word": w.to_string(), "graded_rank": rank.to_string()});
            Ok(Output::table(
                json,
                vec!["word", "graded_rank"],
                vec![vec![w.to_string(), rank.to_string()]],
            )
            .with_text(format!("{rank}\n")))
        }
        BsCmd::Idempotent { sys, s, r } => {
            let system = system(sys)?;
            let nvars = variables_for(system.spec())?;
            let (s, r) = (gen_arg(&system, s)?, gen_arg(&system, r)?);
            if s.abs_diff(r) != 1 {
                return Err(Error::LetterMismatch(format!(
                    "s{s} and s{r} must not commute"
                )));
            }
            let e = srs_idempotent(nvars, s, r)?;
            let idempotent = e.is_idempotent();
            let word = e.source().clone();
            let complement = BSMorphism::identity(&word, nvars).sub(&e)?;
            let image_e = image_graded_rank(&e)?;
            let image_c = image_graded_rank(&complement)?;
            let total = graded_rank(&word);
            let rows = vec![
                vec!["word".into(), word.to_string()],
                vec!["e_idempotent".into(), idempotent.to_string()],
                vec!["graded_rank".into(), total.to_string()],
                vec!["image_e".into(), image_e.to_string()],
                vec!["image_one_minus_e".into(), image_c.to_string()],
            ];
            let json = json!({
                "word": word.to_string(),
                "e_idempotent": idempotent,
                "graded_rank": total.to_string(),
                "image_e": image_e.to_string(),
                "image_one_minus_e": image_c.to_string(),
                "e": e.to_json(),
            });
            Ok(Output::table(json, vec!["property", "value"], rows))
        }
        BsCmd::DecomposeS3 => {
            let d = decompose_srs(3, 0, 1)?;
            let rows = vec![
                vec!["word".into(), d.word.to_string()],
                vec!["e_idempotent".into(), d.e_idempotent.to_string()],
                vec!["graded_rank".into(), d.total_rank.to_string()],
                vec!["image_e".into(), d.image_e.to_string()],
                vec!["image_one_minus_e".into(), d.image_complement.to_string()],
                vec!["ranks_add_up".into(), d.ranks_add_up().to_string()],
                vec![
                    "one_minus_e_on_generator".into(),
                    d.complement_on_generator.to_string(),
                ],
            ];
            Ok(Output::table(d.to_json(), vec!["property", "value"], rows))
        }
    }
}

fn rex(cmd: &RexCmd) -> Result<Output> {
    match cmd {
        RexCmd::Build { sys, element } | RexCmd::Export { sys, element, .. } => {
            let system = system(sys)?;
            let x = element_arg(&system, element)?;
            let g = build_rex(&system, &x)?;
            let rows = g
                .nodes
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    vec![
                        i.to_string(),
                        w.to_string(),
                        g.neighbours(i).len().to_string(),
                    ]
                })
                .collect();
            let mut text = format!(
                "element {}: {} nodes, {} edges, connected: {}\n",
                name(&x),
                g.node_count(),
                g.edge_count(),
                g.is_connected()
            );
            for (i, w) in g.nodes.iter().enumerate() {
                let _ = writeln!(text, "  n{i} {w}");
            }
            let out = Output::table(g.to_json(), vec!["node", "word", "degree"], rows);
            Ok(if matches!(cmd, RexCmd::Build { .. }) {
                out.with_text(text)
            } else {
                out
            })
        }
        RexCmd::Forking {
            sys,
            element,
            strategies,
            timing,
        } => {
            let system = system(sys)?;
            let x = element_arg(&system, element)?;
            let strategies: Vec<Strategy> = strategies
                .iter()
                .map(|s| s.parse())
                .collect::<Result<_>>()?;
            let report = forking_check(&system, &x, &strategies)?;
            let mut json = report.to_json();
            if !timing {
                json["runtime_ms"] = Value::Null;
            }
            let rows = report
                .strategies
                .iter()
                .map(|o| {
                    vec![
                        o.strategy.to_string(),
                        o.path_len.to_string(),
                        o.complete.to_string(),
                        o.closed.to_string(),
                        o.idempotent.map_or("n/a".into(), |b| b.to_string()),
                    ]
                })
                .collect();
            let text = format!(
                "element {}: {} nodes, {} edges; equal: {}; idempotent: {}\n",
                report.element, report.nodes, report.edges, report.equal, report.idempotent_endos
            );
            Ok(Output::table(
                json,
                vec!["strategy", "path_len", "complete", "closed", "idempotent"],
                rows,
            )
            .with_text(text))
        }
    }
}
