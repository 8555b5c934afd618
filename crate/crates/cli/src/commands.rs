use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, Context};
use serde::Serialize;

use triclose::corpus::{apply_filters, parse_corpus, AuthorCap, Corpus, FilterConfig, FilterReport, Format};
use triclose::oracle::{brute_ncc, brute_occ, brute_tcc};
use triclose::projection::{project_one_mode, write_edge_list};
use triclose::report::{format_exact, to_decimal, MetricRecord};
use triclose::synth::{generate_synthetic, SizeDistribution, SynthConfig, SynthSidecar};
use triclose::temporal::{
    closure_by_shared_count, overlap_ratios, tcc, window_sweep, Eligibility, Involvement, TccOptions, TccReport,
    WindowSpec,
};
use triclose::{ncc, occ, run_timeseries, timeseries_csv, TimeseriesConfig};

use crate::output::{emit, json_line, sha256_hex, sidecar_path, write_file, write_manifest};
use crate::{Cli, Command, EligibilityArg, Failure, FormatArg, ModeArgs, Switch, WindowArgs};

struct Loaded {
    corpus: Corpus,
    raw: Corpus,
    digest: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(anyhow!(msg.into()))
}

fn filter_config(cli: &Cli) -> FilterConfig {
    let g = &cli.global;
    FilterConfig {
        min_year: g.from_year.unwrap_or(i32::MIN),
        max_year: g.to_year.unwrap_or(i32::MAX),
        max_authors: match (g.max_authors, g.percentile) {
            (Some(k), _) => Some(AuthorCap::Explicit(k)),
            (None, Some(q)) => Some(AuthorCap::Percentile(q)),
            (None, None) => None,
        },
        drop_single_authored: !g.keep_single_authored,
        percentile_before_single_drop: g.percentile_before_single_drop,
    }
}

fn load(cli: &Cli) -> Result<Loaded, Failure> {
    let path = cli.global.input.as_deref().ok_or_else(|| usage("--input is required"))?;
    let mut bytes = Vec::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_end(&mut bytes)
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_end(&mut bytes))
    }
    .with_context(|| format!("reading {}", path.display()))
    .map_err(Failure::Data)?;

    let format = match cli.global.format {
        Some(FormatArg::Jsonl) => Format::Jsonl,
        Some(FormatArg::Tsv) => Format::Tsv,
        None => Format::from_path(path),
    };
    let raw = parse_corpus(bytes.as_slice(), format)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::Data)?;
    if raw.duplicate_author_warnings() > 0 {
        eprintln!(
            "warning: collapsed {} duplicate author(s) within bylines",
            raw.duplicate_author_warnings()
        );
    }
    let corpus = apply_filters(&raw, &filter_config(cli))?;
    Ok(Loaded {
        corpus,
        raw,
        digest: sha256_hex(&bytes),
    })
}

fn options(mode: &ModeArgs) -> TccOptions {
    TccOptions {
        eligibility: match mode.eligibility {
            EligibilityArg::Strict => Eligibility::Strict,
            EligibilityArg::Literal => Eligibility::Literal,
        },
        dual_activity: matches!(mode.dual_activity, Switch::On),
    }
}

fn window(args: &WindowArgs) -> Result<WindowSpec, Failure> {
    Ok(WindowSpec::new(args.target_year, args.window)?)
}

fn run_tcc(cli: &Cli, corpus: &Corpus, w: WindowSpec, opts: TccOptions) -> Result<TccReport, Failure> {
    let report = if cli.global.oracle {
        brute_tcc(corpus, w, opts)?
    } else {
        tcc(corpus, w, opts)?
    };
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(report)
}

fn metric_output(record: MetricRecord, csv: bool) -> Result<Vec<u8>, Failure> {
    if csv {
        Ok(format!("{}\n{}\n", MetricRecord::CSV_HEADER, record.csv_row()).into_bytes())
    } else {
        json_line(&record)
    }
}

#[derive(Serialize)]
struct ValidationReport<'a> {
    papers_read: usize,
    duplicate_author_warnings: usize,
    filter: &'a FilterReport,
    papers: usize,
    authors: usize,
    min_year: Option<i32>,
    max_year: Option<i32>,
    authors_per_paper: std::collections::BTreeMap<usize, usize>,
}

#[derive(Serialize)]
struct StatsReport {
    papers: usize,
    authors: usize,
    min_year: Option<i32>,
    max_year: Option<i32>,
    edges: usize,
    authors_per_paper: std::collections::BTreeMap<usize, usize>,
}

#[derive(Serialize)]
struct InvolvementOutput {
    target_year: i32,
    window: u32,
    closed_pairs: u128,
    involved_pairs: u128,
    ratio: Option<f64>,
    exact: Option<String>,
    defined: bool,
}

fn parse_sizes(s: &str) -> Result<SizeDistribution, Failure> {
    if let Ok(k) = s.trim().parse::<usize>() {
        return Ok(SizeDistribution::Fixed(k));
    }
    s.split(',')
        .map(|item| {
            let (k, w) = item.split_once(':')?;
            Some((k.trim().parse().ok()?, w.trim().parse().ok()?))
        })
        .collect::<Option<Vec<(usize, f64)>>>()
        .map(SizeDistribution::Categorical)
        .ok_or_else(|| usage(format!("cannot parse --authors-per-paper {s:?}")))
}

pub fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Data(e.into()))?;
    }

    if let Command::Synth {
        seed,
        start_year,
        years,
        papers_per_year,
        authors_per_paper,
        initial_authors,
        pool_growth,
        repeat_prob,
        closure_prob,
        closure_lookback,
    } = &cli.command
    {
        let out_path = cli.global.out.as_deref().ok_or_else(|| usage("synth requires --out"))?;
        let config = SynthConfig {
            start_year: *start_year,
            years: *years,
            papers_per_year: *papers_per_year,
            authors_per_paper: parse_sizes(authors_per_paper)?,
            initial_authors: *initial_authors,
            author_pool_growth: *pool_growth,
            repeat_collab_prob: *repeat_prob,
            closure_prob: *closure_prob,
            closure_lookback_years: *closure_lookback,
            seed: *seed,
        };
        let out = generate_synthetic(&config)?;
        let mut data = Vec::new();
        out.corpus.write_jsonl(&mut data)?;
        write_file(out_path, &data)?;
        let sidecar = SynthSidecar {
            config,
            papers: out.corpus.len(),
            planted: out.planted,
        };
        let mut json = serde_json::to_vec_pretty(&sidecar).map_err(|e| Failure::Data(e.into()))?;
        json.push(b'\n');
        write_file(&sidecar_path(out_path, ".synth.json"), &json)?;
        return write_manifest(cli, out_path, None);
    }

    let Loaded { corpus, raw, digest } = load(cli)?;
    let data: Vec<u8> = match &cli.command {
        Command::Synth { .. } => unreachable!("handled above"),
        Command::Validate => {
            let stats = corpus.stats();
            serde_json::to_vec_pretty(&ValidationReport {
                papers_read: raw.len(),
                duplicate_author_warnings: raw.duplicate_author_warnings(),
                filter: corpus.filter_report().expect("filtered corpus"),
                papers: stats.papers,
                authors: stats.authors,
                min_year: stats.min_year,
                max_year: stats.max_year,
                authors_per_paper: stats.authors_per_paper,
            })
            .map(|mut v| {
                v.push(b'\n');
                v
            })
            .map_err(|e| Failure::Data(e.into()))?
        }
        Command::Stats { edge_list } => {
            let g = project_one_mode(&corpus);
            if let Some(path) = edge_list {
                let mut buf = Vec::new();
                write_edge_list(&g, &corpus, &mut buf)?;
                write_file(path, &buf)?;
            }
            let s = corpus.stats();
            json_line(&StatsReport {
                papers: s.papers,
                authors: s.authors,
                min_year: s.min_year,
                max_year: s.max_year,
                edges: g.edge_count(),
                authors_per_paper: s.authors_per_paper,
            })?
        }
        Command::Ncc { csv } => {
            let r = if cli.global.oracle {
                brute_ncc(&corpus)?
            } else {
                ncc(&project_one_mode(&corpus))
            };
            metric_output(r.to_record(), *csv)?
        }
        Command::Occ { csv } => {
            let r = if cli.global.oracle { brute_occ(&corpus)? } else { occ(&corpus) };
            metric_output(r.to_record(), *csv)?
        }
        Command::Tcc { window: args, details } => {
            let report = run_tcc(cli, &corpus, window(args)?, options(&args.mode))?;
            if let Some(path) = details {
                let mut buf = Vec::new();
                for o in &report.observations {
                    buf.extend(json_line(&o.to_record(corpus.authors()))?);
                }
                write_file(path, &buf)?;
            }
            json_line(&report.summary())?
        }
        Command::Sweep {
            target_year,
            lengths,
            mode,
            csv,
        } => {
            let reports = if cli.global.oracle {
                lengths
                    .iter()
                    .map(|&l| run_tcc(cli, &corpus, WindowSpec::new(*target_year, l)?, options(mode)))
                    .collect::<Result<Vec<_>, _>>()?
            } else {
                window_sweep(&corpus, *target_year, lengths, options(mode))?
            };
            if *csv {
                let mut s = String::from("window,numerator,denominator,ratio,exact\n");
                for r in &reports {
                    let m = r.metric();
                    let ratio = m.ratio();
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{}",
                        r.window.preceding_len,
                        m.numerator,
                        m.denominator,
                        ratio.as_ref().map(|r| to_decimal(r).to_string()).unwrap_or_default(),
                        ratio.as_ref().map(format_exact).unwrap_or_default()
                    );
                }
                s.into_bytes()
            } else {
                let mut buf = Vec::new();
                for r in &reports {
                    buf.extend(json_line(&r.summary())?);
                }
                buf
            }
        }
        Command::Involvement { window: args } => {
            let w = window(args)?;
            let inv = Involvement::of(&run_tcc(cli, &corpus, w, options(&args.mode))?);
            let ratio = inv.ratio();
            json_line(&InvolvementOutput {
                target_year: w.target_year,
                window: w.preceding_len,
                closed_pairs: inv.closed_pairs,
                involved_pairs: inv.involved_pairs,
                ratio: ratio.as_ref().map(to_decimal),
                exact: ratio.as_ref().map(format_exact),
                defined: ratio.is_some(),
            })?
        }
        Command::SharedCurve { window: args } => {
            let report = run_tcc(cli, &corpus, window(args)?, options(&args.mode))?;
            let mut s = String::from("shared,eligible,closed,ratio,exact\n");
            for (n, b) in closure_by_shared_count(&report) {
                let r = b.ratio().expect("buckets are non-empty");
                let _ = writeln!(s, "{n},{},{},{},{}", b.eligible, b.closed, to_decimal(&r), format_exact(&r));
            }
            s.into_bytes()
        }
        Command::Overlap { target_year, window } => {
            let o = overlap_ratios(&corpus, WindowSpec::new(*target_year, *window)?)?;
            json_line(&o.to_record())?
        }
        Command::Timeseries {
            from,
            to,
            window,
            sweep,
            mode,
            json,
        } => {
            let cfg = TimeseriesConfig {
                start_year: *from,
                end_year: *to,
                window_len: *window,
                sweep_lengths: sweep.clone(),
                options: options(mode),
            };
            let rows = run_timeseries(&corpus, &cfg)?;
            for r in &rows {
                for w in &r.warnings {
                    eprintln!("warning: {}: {w}", r.year);
                }
            }
            if *json {
                let mut buf = Vec::new();
                for r in &rows {
                    buf.extend(json_line(&r.to_record())?);
                }
                buf
            } else {
                timeseries_csv(&rows, &cfg).into_bytes()
            }
        }
    };
    emit(cli, &data, Some(digest))
}
