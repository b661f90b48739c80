use std::collections::BTreeMap;

use crate::convolution::convolution_suite;
use crate::duality::{
    check_frobenius_algebra, check_mate_invertibility, check_nat_transf, check_triangles, transport_dual,
    transport_dual_within, MateSide,
};
use crate::error::{FrobError, Result};
use crate::frob_tensor::{check_frob_category, pointwise_tensor};
use crate::functor::{
    check_comonoidal_coherence, check_frobenius, check_monoidal_coherence, check_naturality, check_split,
    compose_frobenius, run_all_suites, FrobFunctor, ObjectGrid,
};
use crate::monoidal::{CategoryInstance, MonObject};
use crate::report::{Report, ReportEntry};

use super::ast::{Grid, Ident, Options, Statement};
use super::bind::Value;
use super::SpecModel;

/// Grid used when a directive does not give one.
pub const DEFAULT_GRID: (usize, usize) = (1, 2);

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Refuse directives whose largest matrix side would exceed this.
    pub max_dim: Option<usize>,
    /// Stop after the first directive that does not fully pass.
    pub fail_fast: bool,
}

/// Executes the directives in order. Each entry's location is prefixed with
/// the names the directive was given.
pub fn run_checks(model: &SpecModel, opts: &RunOptions) -> Report {
    let mut env = model.bindings.clone();
    let mut report = Report::new();
    for s in model.directives() {
        let r = execute(s, &mut env, opts);
        let stop = opts.fail_fast && !r.all_pass();
        report.extend(r);
        if stop {
            report.note("fail-fast: the remaining directives were not run");
            break;
        }
    }
    report
}

type Env = BTreeMap<String, Value>;

fn lookup<'a>(env: &'a Env, name: &Ident) -> Result<&'a Value> {
    env.get(&name.name).ok_or_else(|| {
        FrobError::Precondition(format!(
            "`{}` is unavailable because the directive defining it failed",
            name.name
        ))
    })
}

fn functor(env: &Env, name: &Ident) -> Result<FrobFunctor> {
    lookup(env, name)?.to_functor()
}

fn grid_for(f: &FrobFunctor, grid: Option<Grid>) -> Result<ObjectGrid> {
    let (lo, hi) = grid.map_or(DEFAULT_GRID, |g| (g.lo, g.hi));
    ObjectGrid::for_source(f.source(), lo, hi)
}

/// Largest matrix side a suite over `grid` builds for `f`: the image of a
/// triple tensor, or a triple tensor of images.
fn demand(f: &FrobFunctor, grid: &ObjectGrid) -> Result<usize> {
    let top = match f.source() {
        CategoryInstance::MatQ => MonObject::Mat(grid.max_dim()),
        CategoryInstance::SigmaG(_) => MonObject::Star,
    };
    let src = f.source();
    let top3 = src.tensor_objs(&[top, top, top])?;
    Ok(f.dim_at(&top3)?.max(f.dim_at(&top)?.pow(3)))
}

fn within_cap(needed: usize, opts: &RunOptions) -> Result<()> {
    match opts.max_dim {
        Some(cap) if needed > cap => Err(FrobError::Precondition(format!(
            "needs matrices of dimension {needed}, above the max-dim cap {cap}"
        ))),
        _ => Ok(()),
    }
}

fn labelled(mut r: Report, label: &str) -> Report {
    for e in &mut r.entries {
        e.location = format!("{label} {}", e.location);
    }
    r
}

fn execute(s: &Statement, env: &mut Env, opts: &RunOptions) -> Report {
    match s {
        Statement::Check { verb, args, options } => {
            let label = args.iter().map(|a| a.name.as_str()).collect::<Vec<_>>().join(" ");
            match run_check(&verb.name, args, options, env, opts) {
                Ok(r) => labelled(r, &label),
                Err(e) => single_error(&verb.name, &verb.name, &label, &e),
            }
        }
        Statement::Transport {
            dual,
            via,
            bind,
            options,
        } => {
            let label = format!("{via}({dual})");
            let moved = (|| {
                let f = functor(env, via)?;
                let Value::Dual(d) = lookup(env, dual)? else {
                    unreachable!("type checked")
                };
                match options.grid {
                    Some(g) => transport_dual_within(&f, d, &grid_for(&f, Some(g))?),
                    None => transport_dual(&f, d),
                }
            })();
            match (moved, bind) {
                (Ok(d), Some(x)) => {
                    env.insert(x.name.clone(), Value::Dual(d));
                    Report::new()
                }
                (Ok(d), None) => labelled(check_triangles(&d), &label),
                (Err(e), _) => single_error("transport", "transport-dual", &label, &e),
            }
        }
        Statement::Tensor { left, right, bind } => {
            let built = (|| pointwise_tensor(&functor(env, left)?, &functor(env, right)?))();
            bind_result(env, bind, built, "tensor", &format!("{left}*{right}"))
        }
        Statement::Compose { outer, inner, bind } => {
            let built = (|| compose_frobenius(&functor(env, outer)?, &functor(env, inner)?))();
            bind_result(env, bind, built, "compose", &format!("{outer}.{inner}"))
        }
        Statement::Matrix { .. } | Statement::Decl { .. } => Report::new(),
    }
}

fn bind_result(env: &mut Env, bind: &Ident, built: Result<FrobFunctor>, suite: &str, label: &str) -> Report {
    match built {
        Ok(f) => {
            env.insert(bind.name.clone(), Value::Functor(f));
            Report::new()
        }
        Err(e) => single_error(suite, suite, label, &e),
    }
}

fn single_error(suite: &str, check: &str, location: &str, e: &FrobError) -> Report {
    let mut r = Report::new();
    r.push(ReportEntry::error(suite, check, location, e));
    r
}

fn run_check(verb: &str, args: &[Ident], options: &Options, env: &Env, opts: &RunOptions) -> Result<Report> {
    match verb {
        "triangles" => match lookup(env, &args[0])? {
            Value::Dual(d) => Ok(check_triangles(d)),
            _ => unreachable!("type checked"),
        },
        "frobalg" => match lookup(env, &args[0])? {
            Value::Algebra(a) => Ok(check_frobenius_algebra(a)),
            _ => unreachable!("type checked"),
        },
        "convolution" => match lookup(env, &args[0])? {
            Value::Rep(r) => {
                let order = r.base().group().order();
                within_cap(order * r.dim().pow(3), opts)?;
                Ok(convolution_suite(r))
            }
            _ => unreachable!("type checked"),
        },
        "frobcat" => {
            let fs = [functor(env, &args[0])?, functor(env, &args[1])?, functor(env, &args[2])?];
            let grid = grid_for(&fs[0], options.grid)?;
            let mut needed = 1usize;
            for f in &fs {
                needed = needed.saturating_mul(demand(f, &grid)?);
            }
            within_cap(needed, opts)?;
            Ok(check_frob_category(&fs[0], &fs[1], &fs[2], &grid))
        }
        "transf" | "mate" => {
            let Value::Transf(t) = lookup(env, &args[0])? else {
                unreachable!("type checked")
            };
            let grid = grid_for(t.source(), options.grid)?;
            within_cap(demand(t.source(), &grid)?.max(demand(t.target(), &grid)?), opts)?;
            let mut report = check_nat_transf(t, &grid);
            if verb == "mate" {
                let Value::Dual(d) = lookup(env, &args[1])? else {
                    unreachable!("type checked")
                };
                let side = options.side.map_or(MateSide::Left, |(s, _)| s);
                if report.all_pass() {
                    report.extend(check_mate_invertibility(t, d, side));
                } else {
                    report.note(format!(
                        "the mate of {} was not computed because the transformation failed its checks",
                        args[0]
                    ));
                }
            }
            Ok(report)
        }
        _ => {
            let f = functor(env, &args[0])?;
            let grid = grid_for(&f, options.grid)?;
            within_cap(demand(&f, &grid)?, opts)?;
            let suite = match verb {
                "frobenius" => check_frobenius,
                "monoidal" => check_monoidal_coherence,
                "comonoidal" => check_comonoidal_coherence,
                "naturality" => check_naturality,
                "split" => check_split,
                "all" => run_all_suites,
                other => unreachable!("unknown verb `{other}` passed the binder"),
            };
            Ok(suite(&f, &grid))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_spec;
    use super::*;
    use crate::report::Status;

    fn run(text: &str) -> Report {
        run_checks(&parse_spec(text).unwrap(), &RunOptions::default())
    }

    #[test]
    fn cupcap_triangles_pass() {
        let r = run("dual D = cupcap(2)\ncheck triangles D");
        assert_eq!(r.len(), 2);
        assert!(r.all_pass());
        assert_eq!(r.entries[0].location, "D (2,2)");
    }

    #[test]
    fn frobenius_entries_per_triple() {
        let r = run("frobalg R = zmod(2)\nfunctor F = tensor_left(R)\ncheck frobenius F grid 1..3");
        assert!(r.all_pass());
        assert_eq!(r.entries.iter().filter(|e| e.check == "frobenius-1").count(), 27);
    }

    #[test]
    fn corrupted_counit_fails_with_witness() {
        let r = run("frobalg R = zmod(2) with eps = [1 1]\ncheck frobalg R");
        let fail = r.failures().next().unwrap();
        assert!(fail.witness.is_some());
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn transported_duals_can_be_checked() {
        let r = run(
            "frobalg R = zmod(3)\nfunctor F = tensor_left(R)\ndual D = cupcap(2)\n\
             transport D via F as FD\ncheck triangles FD\ntransport D via F",
        );
        assert_eq!(r.len(), 4);
        assert!(r.all_pass());
    }

    #[test]
    fn missing_grid_coverage_is_an_error_and_the_run_continues() {
        let r = run("functor F = identity\ndual D = cupcap(2)\ntransport D via F grid 1..2\ncheck triangles D");
        assert_eq!(r.entries[0].status, Status::Error);
        assert!(r.entries[0].detail.as_ref().unwrap().contains("does not cover objects 4"));
        assert_eq!(r.len(), 3);
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn max_dim_refuses_large_directives() {
        let model = parse_spec("frobalg R = zmod(2)\nfunctor F = tensor_left(R)\ncheck frobenius F grid 1..2").unwrap();
        let opts = RunOptions {
            max_dim: Some(63),
            fail_fast: false,
        };
        let r = run_checks(&model, &opts);
        assert_eq!(r.len(), 1);
        assert!(r.entries[0].detail.as_ref().unwrap().contains("dimension 64"));
        let opts = RunOptions {
            max_dim: Some(64),
            ..opts
        };
        assert!(run_checks(&model, &opts).all_pass());
    }

    #[test]
    fn fail_fast_stops_after_the_first_failing_directive() {
        let text = "frobalg R = zmod(2) with eps = [1 1]\ncheck frobalg R\ndual D = cupcap(1)\ncheck triangles D";
        let model = parse_spec(text).unwrap();
        let all = run_checks(&model, &RunOptions::default());
        let opts = RunOptions {
            fail_fast: true,
            ..Default::default()
        };
        let short = run_checks(&model, &opts);
        assert_eq!(all.len(), short.len() + 2);
        assert_eq!(short.notes.len(), 1);
    }

    #[test]
    fn non_comonoidal_transformation_blocks_the_mate() {
        let r = run(
            "frobalg R = zmod(2)\nfunctor F = tensor_left(R)\ndual D = cupcap(2)\n\
             transf T = left_factor(F, F, [1 1; 0 0])\ncheck mate T D",
        );
        assert!(r.first_failure_of("comonoidal-counit").is_some());
        assert!(r.entries.iter().all(|e| e.suite != "mate"));
        let r = run("frobalg R = zmod(2)\nfunctor F = tensor_left(R)\ndual D = cupcap(2)\ntransf T = identity(F)\ncheck mate T D side right");
        assert!(r.all_pass());
        assert!(r.entries.iter().any(|e| e.suite == "mate"));
    }

    #[test]
    fn convolution_directive() {
        let r = run("base B = zmod(2)\nfunctor F = regular(B)\ncheck convolution F");
        assert!(r.all_pass(), "{:?}", r.failures().next());
        let r = run("base B = discrete(2)\nfunctor F = constant(B, 1)\ncheck convolution F");
        assert_eq!(r.first_failure_of("eval3-iso").unwrap().status, Status::Fail);
    }
}
