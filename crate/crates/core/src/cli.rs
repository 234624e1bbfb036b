//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check found mismatches (output still written),
//! 2 usage or domain error, 3 integrality violated inside a closed form.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::ArbInt;
use crate::error::{usage, Error, Result};
use crate::identities::closed_form::rhs_general_plain;
use crate::identities::oracle::{BinomialPowers, ConvPowers};
use crate::identities::{
    evaluate_closed_form, verify_identity, Evaluator, IdentityId, VerificationReport,
};
use crate::sequences::{Kind, SeqCache, SeqParams};
use crate::series::{verify_f2_relation, verify_lemma_expansion};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "balancing",
    version,
    about = "Exact convolution identities for balancing and Lucas-type sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Balancing,
    LucasBalancing,
    Fibonacci,
    Lucas,
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvMode {
    /// S_r(n), compositions into positive parts
    Plain,
    /// sum_l (-1)^l binom(2r-3, l) S_r(n - 2l)
    Alternating,
    /// multinomial-weighted product of u-terms
    BinomialU,
    /// multinomial-weighted product of v-terms
    BinomialV,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<i64>,
}

impl ParamArgs {
    fn resolve(&self, default: SeqParams) -> Result<SeqParams> {
        match (self.a, self.b) {
            (None, None) => Ok(default),
            (Some(a), Some(b)) => SeqParams::new(a, b),
            _ => Err(usage("--a and --b must be given together")),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print terms of a sequence.
    Seq {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
    },
    /// Evaluate a convolution by brute force.
    Conv {
        #[arg(long, value_enum, default_value_t = ConvMode::Plain)]
        mode: ConvMode,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Evaluate the closed-form side of an identity.
    Closed {
        #[arg(long, value_parser = parse_identity)]
        identity: IdentityId,
        #[arg(long, allow_negative_numbers = true)]
        r: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Compare both sides of an identity over a range of n.
    Verify {
        #[arg(long, value_parser = parse_identity)]
        identity: IdentityId,
        #[arg(long, allow_negative_numbers = true)]
        r: Option<i64>,
        /// Defaults to the lower end of the identity's domain.
        #[arg(long, allow_negative_numbers = true)]
        n_min: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        n_max: i64,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Check the generating-function relations coefficientwise.
    SeriesCheck {
        #[arg(long, default_value_t = 80)]
        order: usize,
        /// Ranks for the derivative expansion of f^r.
        #[arg(long = "r", value_delimiter = ',', default_values_t = [2usize, 3, 4, 5, 6])]
        ranks: Vec<usize>,
    },
    /// Time the plain closed form against the series oracle.
    Bench {
        #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, default_value_t = 1000, allow_negative_numbers = true)]
        n: i64,
    },
    /// Print both sides of an identity side by side.
    Table {
        #[arg(long, value_parser = parse_identity)]
        identity: IdentityId,
        #[arg(long, allow_negative_numbers = true)]
        r: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        n_min: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        n_max: i64,
        #[command(flatten)]
        params: ParamArgs,
    },
}

fn parse_identity(s: &str) -> std::result::Result<IdentityId, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = IdentityId::ALL.iter().map(|id| id.name()).collect();
        format!(
            "unknown identity '{s}' (expected one of: {})",
            names.join(", ")
        )
    })
}

/// Rendered output plus the exit code it implies.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = match execute(&cli.command, cli.format) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                Error::NonIntegral(_) => EXIT_INTERNAL,
                Error::Domain(_) | Error::Usage(_) => EXIT_USAGE,
            };
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => out
            .write_all(outcome.text.as_bytes())
            .and_then(|_| out.flush()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}

fn execute(cmd: &Command, format: Format) -> Result<Outcome> {
    match cmd {
        Command::Seq {
            kind,
            params,
            from,
            to,
        } => seq(*kind, params, *from, *to, format).map(Outcome::ok),
        Command::Conv { mode, r, n, params } => {
            conv(*mode, *r, *n, params, format).map(Outcome::ok)
        }
        Command::Closed {
            identity,
            r,
            n,
            params,
        } => {
            let p = params.resolve(identity.default_params())?;
            let r = identity.resolve(p, *r)?;
            let value = evaluate_closed_form(*identity, p, Some(r), *n)?;
            Ok(Outcome::ok(scalar(
                identity.name(),
                p,
                r,
                *n,
                &value,
                format,
            )))
        }
        Command::Verify {
            identity,
            r,
            n_min,
            n_max,
            params,
        } => {
            let p = params.resolve(identity.default_params())?;
            let r = identity.resolve(p, *r)?;
            let lo = n_min.unwrap_or(identity.min_n(r));
            let report = verify_identity(*identity, p, Some(r), (lo, *n_max))?;
            let code = if report.is_pass() {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            };
            Ok(Outcome {
                text: render_report(&report, format),
                code,
            })
        }
        Command::SeriesCheck { order, ranks } => series_check(*order, ranks, format),
        Command::Bench { r, n } => bench(*r, *n, format).map(Outcome::ok),
        Command::Table {
            identity,
            r,
            n_min,
            n_max,
            params,
        } => table(*identity, *r, *n_min, *n_max, params, format),
    }
}

fn kind_of(kind: KindArg, params: &ParamArgs) -> Result<Kind> {
    let fixed = |k: Kind| -> Result<Kind> {
        if params.a.is_some() || params.b.is_some() {
            return Err(usage("--a/--b only apply to --kind u or v"));
        }
        Ok(k)
    };
    match kind {
        KindArg::Balancing => fixed(Kind::Balancing),
        KindArg::LucasBalancing => fixed(Kind::LucasBalancing),
        KindArg::Fibonacci => fixed(Kind::Fibonacci),
        KindArg::Lucas => fixed(Kind::Lucas),
        KindArg::U | KindArg::V => {
            if params.a.is_none() || params.b.is_none() {
                return Err(usage("--kind u/v needs --a and --b"));
            }
            let p = params.resolve(SeqParams::BALANCING)?;
            Ok(if kind == KindArg::U {
                Kind::U(p)
            } else {
                Kind::V(p)
            })
        }
    }
}

fn seq(kind: KindArg, params: &ParamArgs, from: i64, to: i64, format: Format) -> Result<String> {
    let kind = kind_of(kind, params)?;
    if from < 0 {
        return Err(usage(format!("--from must be nonnegative, got {from}")));
    }
    if from > to {
        return Err(usage(format!("empty range {from}..={to}")));
    }
    let cache = SeqCache::with_capacity(kind.params(), to as usize);
    let values = (from..=to)
        .map(|n| kind.term(&cache, n))
        .collect::<Result<Vec<_>>>()?;
    let sym = kind.symbol();
    let mut s = String::new();
    match format {
        Format::Plain => {
            for (n, v) in (from..).zip(&values) {
                writeln!(s, "{sym}_{n} = {v}").unwrap();
            }
        }
        Format::Csv => {
            let header: Vec<String> = (from..=to).map(|n| format!("{sym}_{n}")).collect();
            let row: Vec<String> = values.iter().map(ToString::to_string).collect();
            writeln!(s, "{}", header.join(",")).unwrap();
            writeln!(s, "{}", row.join(",")).unwrap();
        }
        Format::Json => {
            let p = kind.params();
            let doc = json!({
                "kind": sym,
                "params": { "a": p.a().to_string(), "b": p.b().to_string() },
                "from": from.to_string(),
                "values": values.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            writeln!(s, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
        }
    }
    Ok(s)
}

fn conv(mode: ConvMode, r: i64, n: i64, params: &ParamArgs, format: Format) -> Result<String> {
    let p = params.resolve(SeqParams::BALANCING)?;
    if r < 1 {
        return Err(crate::error::domain(format!("r must be >= 1, got {r}")));
    }
    if n < 0 {
        return Err(crate::error::domain(format!(
            "n must be nonnegative, got {n}"
        )));
    }
    let value = match mode {
        ConvMode::Plain => ConvPowers::new(p, r, n as usize)?.get(n),
        ConvMode::Alternating => {
            if r < 2 {
                return Err(crate::error::domain(format!(
                    "alternating mode needs r >= 2, got {r}"
                )));
            }
            ConvPowers::new(p, r, n as usize)?.alternating(n)
        }
        ConvMode::BinomialU | ConvMode::BinomialV => {
            let cache = SeqCache::with_capacity(p, n as usize);
            let base = if mode == ConvMode::BinomialU {
                cache.u_prefix(n as usize)
            } else {
                cache.v_prefix(n as usize)
            };
            BinomialPowers::new(&base, r as usize)
                .get(r as usize, n as usize)
                .clone()
        }
    };
    let label = match mode {
        ConvMode::Plain => "plain",
        ConvMode::Alternating => "alternating",
        ConvMode::BinomialU => "binomial-u",
        ConvMode::BinomialV => "binomial-v",
    };
    Ok(scalar(label, p, r, n, &value, format))
}

fn scalar(what: &str, p: SeqParams, r: i64, n: i64, value: &ArbInt, format: Format) -> String {
    match format {
        Format::Plain => format!("{value}\n"),
        Format::Csv => format!(
            "what,a,b,r,n,value\n{what},{},{},{r},{n},{value}\n",
            p.a(),
            p.b()
        ),
        Format::Json => {
            let doc = json!({
                "what": what,
                "params": { "a": p.a().to_string(), "b": p.b().to_string() },
                "r": r.to_string(),
                "n": n.to_string(),
                "value": value.to_string(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    }
}

fn render_report(rep: &VerificationReport, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Json => {
            s.push_str(&rep.to_json());
            s.push('\n');
        }
        Format::Csv => {
            s.push_str("identity,a,b,r,lo,hi,checked,passed,status\n");
            writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                rep.identity,
                rep.params.a(),
                rep.params.b(),
                rep.r,
                rep.n_range.0,
                rep.n_range.1,
                rep.checked,
                rep.passed(),
                if rep.is_pass() { "pass" } else { "fail" }
            )
            .unwrap();
        }
        Format::Plain => {
            writeln!(s, "identity  {}", rep.identity).unwrap();
            writeln!(s, "params    {}", rep.params).unwrap();
            writeln!(s, "r         {}", rep.r).unwrap();
            writeln!(s, "range     [{}, {}]", rep.n_range.0, rep.n_range.1).unwrap();
            writeln!(s, "checked   {}", rep.checked).unwrap();
            writeln!(s, "passed    {}", rep.passed()).unwrap();
            writeln!(
                s,
                "status    {}",
                if rep.is_pass() { "pass" } else { "FAIL" }
            )
            .unwrap();
            for f in &rep.failures {
                writeln!(s, "  n={}  lhs={}  rhs={}", f.n, f.lhs, f.rhs).unwrap();
            }
        }
    }
    s
}

fn series_check(order: usize, ranks: &[usize], format: Format) -> Result<Outcome> {
    let mut rows: Vec<(String, String, bool)> =
        vec![("f2-relation".into(), "-".into(), verify_f2_relation(order)?)];
    for &r in ranks {
        rows.push((
            "lemma-expansion".into(),
            r.to_string(),
            verify_lemma_expansion(r, order)?,
        ));
    }
    let code = if rows.iter().all(|r| r.2) {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let mut s = String::new();
    match format {
        Format::Plain => {
            for (check, r, ok) in &rows {
                writeln!(
                    s,
                    "{check:<16} r={r:<2} order={order}  {}",
                    if *ok { "ok" } else { "FAIL" }
                )
                .unwrap();
            }
        }
        Format::Csv => {
            s.push_str("check,r,order,holds\n");
            for (check, r, ok) in &rows {
                writeln!(s, "{check},{r},{order},{ok}").unwrap();
            }
        }
        Format::Json => {
            let doc: Vec<_> = rows
                .iter()
                .map(|(check, r, ok)| json!({ "check": check, "r": r, "order": order.to_string(), "holds": ok }))
                .collect();
            writeln!(s, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
        }
    }
    Ok(Outcome { text: s, code })
}

fn bench(r: i64, n: i64, format: Format) -> Result<String> {
    if r < 2 || n < r {
        return Err(crate::error::domain(format!(
            "bench needs n >= r >= 2, got r={r}, n={n}"
        )));
    }
    let t0 = Instant::now();
    let cache = SeqCache::with_capacity(SeqParams::BALANCING, n as usize);
    let closed = rhs_general_plain(&cache, r, n)?;
    let closed_time = t0.elapsed();
    let t1 = Instant::now();
    let brute = ConvPowers::new(SeqParams::BALANCING, r, n as usize)?.get(n);
    let oracle_time = t1.elapsed();
    let agree = closed == brute;
    let (ct, ot) = (
        closed_time.as_secs_f64() * 1e3,
        oracle_time.as_secs_f64() * 1e3,
    );
    Ok(match format {
        Format::Plain => format!(
            "r={r} n={n}\nclosed form    {ct:10.3} ms\nseries oracle  {ot:10.3} ms\nagree          {agree}\n"
        ),
        Format::Csv => format!("r,n,closed_ms,oracle_ms,agree\n{r},{n},{ct:.3},{ot:.3},{agree}\n"),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "r": r.to_string(),
                "n": n.to_string(),
                "closed_ms": format!("{ct:.3}"),
                "oracle_ms": format!("{ot:.3}"),
                "agree": agree,
            }))
            .unwrap()
        ),
    })
}

fn table(
    id: IdentityId,
    r: Option<i64>,
    n_min: Option<i64>,
    n_max: i64,
    params: &ParamArgs,
    format: Format,
) -> Result<Outcome> {
    let p = params.resolve(id.default_params())?;
    let r = id.resolve(p, r)?;
    let lo = n_min.unwrap_or(id.min_n(r)).max(id.min_n(r));
    if lo > n_max {
        return Err(usage(format!(
            "range [{lo}, {n_max}] misses the domain n >= {} of {id}",
            id.min_n(r)
        )));
    }
    let ev = Evaluator::new(id, p, Some(r), n_max)?;
    let mut rows = Vec::new();
    for n in lo..=n_max {
        let (lhs, rhs) = (ev.lhs(n)?, ev.rhs(n)?);
        rows.push((n, lhs, rhs));
    }
    let code = if rows.iter().all(|(_, l, r)| l == r) {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let mut s = String::new();
    match format {
        Format::Plain => {
            writeln!(s, "# {id} {p} r={r}").unwrap();
            for (n, lhs, rhs) in &rows {
                let mark = if lhs == rhs { "=" } else { "!=" };
                writeln!(s, "{n:>5}  {lhs}  {mark}  {rhs}").unwrap();
            }
        }
        Format::Csv => {
            s.push_str("n,lhs,rhs,equal\n");
            for (n, lhs, rhs) in &rows {
                writeln!(s, "{n},{lhs},{rhs},{}", lhs == rhs).unwrap();
            }
        }
        Format::Json => {
            let doc = json!({
                "identity": id.name(),
                "params": { "a": p.a().to_string(), "b": p.b().to_string() },
                "r": r.to_string(),
                "rows": rows
                    .iter()
                    .map(|(n, l, r)| json!({ "n": n.to_string(), "lhs": l.to_string(), "rhs": r.to_string() }))
                    .collect::<Vec<_>>(),
            });
            writeln!(s, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
        }
    }
    Ok(Outcome { text: s, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("balancing").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn seq_csv() {
        let (code, out, _) = call(&["seq", "--kind", "balancing", "--to", "5", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "B_0,B_1,B_2,B_3,B_4,B_5\n0,1,6,35,204,1189\n");
    }

    #[test]
    fn seq_generic_params_accept_negative_b() {
        let (code, out, err) = call(&["seq", "--kind", "u", "--a", "6", "--b", "-1", "--to", "3"]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out, "u_0 = 0\nu_1 = 1\nu_2 = 6\nu_3 = 35\n");
        let (code, _, _) = call(&["seq", "--kind", "u", "--a", "2", "--b", "-1", "--to", "3"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(
            call(&["seq", "--kind", "balancing", "--to", "5", "--bogus"]).0,
            2
        );
        assert_eq!(call(&["verify", "--identity", "nope", "--n-max", "5"]).0, 2);
        assert_eq!(
            call(&[
                "closed",
                "--identity",
                "general-alt",
                "--r",
                "4",
                "--n",
                "3"
            ])
            .0,
            2
        );
        assert_eq!(
            call(&[
                "verify",
                "--identity",
                "general-alt",
                "--r",
                "4",
                "--n-min",
                "0",
                "--n-max",
                "5"
            ])
            .0,
            2
        );
        assert_eq!(
            call(&[
                "verify",
                "--identity",
                "fib-pair-f",
                "--a",
                "6",
                "--b",
                "-1",
                "--n-max",
                "5"
            ])
            .0,
            2
        );
        assert_eq!(call(&[]).0, 2);
    }

    #[test]
    fn closed_and_conv_agree() {
        let (_, closed, _) = call(&[
            "closed",
            "--identity",
            "general-plain",
            "--r",
            "4",
            "--n",
            "6",
        ]);
        let (_, conv, _) = call(&["conv", "--r", "4", "--n", "6"]);
        assert_eq!(closed, "356\n");
        assert_eq!(conv, closed);
        let (_, alt, _) = call(&["conv", "--mode", "alternating", "--r", "5", "--n", "10"]);
        assert_eq!(alt, "868896\n");
    }

    #[test]
    fn verify_exit_codes() {
        assert_eq!(
            call(&[
                "verify",
                "--identity",
                "general-alt",
                "--r",
                "4",
                "--n-max",
                "60"
            ])
            .0,
            0
        );
        let (code, out, _) = call(&["verify", "--identity", "cor-printed-r5", "--n-max", "20"]);
        assert_eq!(code, 1);
        assert!(out.contains("status    FAIL"));
    }

    #[test]
    fn series_check_and_table() {
        let (code, out, _) = call(&[
            "series-check",
            "--order",
            "30",
            "--r",
            "2,3",
            "--format",
            "csv",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 4);
        let (code, out, _) = call(&[
            "table",
            "--identity",
            "pair-plain",
            "--n-max",
            "4",
            "--format",
            "csv",
        ]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "n,lhs,rhs,equal\n2,1,1,true\n3,12,12,true\n4,106,106,true\n"
        );
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }
}
