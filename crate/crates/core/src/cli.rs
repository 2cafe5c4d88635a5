//! The `vershik` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bratteli::{export_dot, min_path, MaxToMin, Orbit, Ordered, StationaryOrderedDiagram};
use crate::coding::{build_j_symbol, eventually_periodic_check};
use crate::constructions::{
    diagram_via_derivative_at, encoding_power, is_m_primitive, is_proper, minimal_components, multi_edge_encoding_power,
    nesting_system, render_set, return_words, MPrimitivity, Properness, PROPER_SEARCH,
};
use crate::error::{Error, Result};
use crate::language::{factor_language, periodicity_witness_search, short_block_bound, ShortBlockBound};
use crate::phase_space::{core_membership, lambda_seeds, lambda_window, Membership};
use crate::recognize::{recognize_window, Recognition};
use crate::report::Report;
use crate::words::{parse_substitution, Letter, Substitution, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SCALE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "vershik", version, about = "Substitution subshifts and their Bratteli-Vershik models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classification, growth, nesting, properness and components in one report
    Analyze(Opts),
    /// Factors up to --cap
    Language(Opts),
    /// Long and short letters, nesting case, short-block bound
    Classify(Opts),
    /// Periodicity witnesses up to --cap and on a fixed-point prefix
    PeriodicCheck(Opts),
    /// Marked words and matching rule
    Nesting(Opts),
    /// Minimal components and m-primitivity
    Minimal(Opts),
    /// Return words to the fixed pairs, up to length --cap
    ReturnWords(Opts),
    /// Return words and the derivative substitution
    Derive(Opts),
    /// Stationary diagram by --method
    BuildDiagram(Opts),
    /// Substitution read on the diagram and its multi-edge encoding
    Read(Opts),
    /// Vershik orbit from the minimal path
    Vershik(Opts),
    /// Parse chain of a central window of radius --radius
    Recognize(Opts),
    /// The --depth symbol of --letter
    Jsymbol(Opts),
    /// Seeds of two-sided fixed points and their windows
    Lambda(Opts),
    /// DOT of the diagram unrolled to --depth
    Export(Opts),
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Substitution file, one `letter -> word` rule per line
    #[arg(long)]
    sub: PathBuf,
    /// Word-length bound for languages and return words
    #[arg(long, default_value_t = 12)]
    cap: usize,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long, default_value_t = 32)]
    radius: usize,
    #[arg(long, default_value_t = 16)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = Method::Derivative)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Report)]
    format: Format,
    /// Offset of the recognized window inside the expansion
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Base letter for jsymbol
    #[arg(long)]
    letter: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    Nesting,
    Derivative,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Dot,
    Report,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Nesting => "nesting",
            Method::Derivative => "derivative",
        }
    }
}

/// Parses `argv` (program name first), runs the command and writes its
/// output. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_scale_bounded() {
                EXIT_SCALE
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn command_name(c: &Command) -> (&'static str, &Opts) {
    match c {
        Command::Analyze(o) => ("analyze", o),
        Command::Language(o) => ("language", o),
        Command::Classify(o) => ("classify", o),
        Command::PeriodicCheck(o) => ("periodic-check", o),
        Command::Nesting(o) => ("nesting", o),
        Command::Minimal(o) => ("minimal", o),
        Command::ReturnWords(o) => ("return-words", o),
        Command::Derive(o) => ("derive", o),
        Command::BuildDiagram(o) => ("build-diagram", o),
        Command::Read(o) => ("read", o),
        Command::Vershik(o) => ("vershik", o),
        Command::Recognize(o) => ("recognize", o),
        Command::Jsymbol(o) => ("jsymbol", o),
        Command::Lambda(o) => ("lambda", o),
        Command::Export(o) => ("export", o),
    }
}

fn execute(c: &Command) -> Result<String> {
    let (name, o) = command_name(c);
    let bytes = std::fs::read(&o.sub)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", o.sub.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::InvalidArgument(format!("{} is not UTF-8", o.sub.display())))?;
    let s = parse_substitution(&text)?;
    let mut r = Report::new(name, &o.sub.display().to_string(), &bytes);
    match c {
        Command::Analyze(_) => analyze(&s, o, &mut r),
        Command::Language(_) => language(&s, o, &mut r),
        Command::Classify(_) => classify(&s, o, &mut r),
        Command::PeriodicCheck(_) => periodic(&s, o, &mut r),
        Command::Nesting(_) => nesting(&s, &mut r),
        Command::Minimal(_) => minimal(&s, o, &mut r),
        Command::ReturnWords(_) => returns(&s, o, &mut r),
        Command::Derive(_) => derive(&s, o, &mut r),
        Command::BuildDiagram(_) => {
            let m = model(&s, o)?;
            if o.format == Format::Dot {
                return dot(&m, o.depth);
            }
            r.param("method", o.method.name());
            r.param("cap", o.cap);
            diagram_report(&m.diagram, &mut r);
            Ok(())
        }
        Command::Read(_) => read(&s, o, &mut r),
        Command::Vershik(_) => vershik(&s, o, &mut r),
        Command::Recognize(_) => recognize(&s, o, &mut r),
        Command::Jsymbol(_) => jsymbol(&s, o, &mut r),
        Command::Lambda(_) => lambda(&s, o, &mut r),
        Command::Export(_) => return dot(&model(&s, o)?, o.depth),
    }?;
    Ok(r.render())
}

fn words(s: &Substitution, ws: &[Word]) -> String {
    ws.iter().map(|w| s.render(w)).collect::<Vec<_>>().join(" ")
}

fn rules(r: &mut Report, prefix: &str, t: &Substitution) {
    for a in t.letters() {
        r.push(format!("{prefix}.{}", t.alphabet().label(a)), t.render(t.image(a)));
    }
}

fn classification(s: &Substitution, o: &Opts, r: &mut Report) {
    let c = s.classify_letters();
    r.push("letters.long", render_set(s.alphabet(), &c.long));
    r.push("letters.short", render_set(s.alphabet(), &c.short));
    r.push("nesting-class", s.nesting_class());
    match short_block_bound(s, o.cap.max(2)) {
        ShortBlockBound::Bound(m) => r.push("short-block-bound", m),
        ShortBlockBound::Unbounded(cap) => r.push("short-block-bound", format!("unbounded up to length {cap}")),
    }
}

fn analyze(s: &Substitution, o: &Opts, r: &mut Report) -> Result<()> {
    r.param("cap", o.cap);
    r.param("depth", o.depth);
    r.push("alphabet", s.alphabet().labels().join(" "));
    rules(r, "rule", s);
    classification(s, o, r);
    let m = s.incidence_matrix();
    for a in s.letters() {
        let row: Vec<String> = m.row(a.index()).iter().map(u64::to_string).collect();
        r.push(format!("incidence.{}", s.alphabet().label(a)), row.join(" "));
    }
    for n in 1..=o.depth {
        let (lo, hi) = s.norms(n);
        r.push(format!("norms.{n}"), format!("{lo} {hi}"));
    }
    match periodicity_witness_search(s, o.cap, 4) {
        Some(u) => r.push("periodic-word", s.render(&u)),
        None => r.push("periodic-word", format!("none up to length {}", o.cap)),
    }
    proper_line(s, r);
    m_primitive_lines(s, o, r);
    r.push("minimal-components", minimal_components(s, o.cap).len());
    Ok(())
}

fn proper_line(s: &Substitution, r: &mut Report) {
    match is_proper(s, PROPER_SEARCH) {
        Properness::Proper(p) => r.push("proper", format!("yes, p = {p}")),
        Properness::NotProperUpTo(p) => r.push("proper", format!("no for p ≤ {p}")),
    }
}

fn m_primitive_lines(s: &Substitution, o: &Opts, r: &mut Report) {
    match is_m_primitive(s, o.cap) {
        MPrimitivity::MPrimitive(m) => {
            r.push("m-primitive", format!("yes, m = {}", m.m()));
            for (i, b) in m.blocks.iter().enumerate() {
                r.push(format!("block.{}", i + 1), render_set(s.alphabet(), b));
            }
            r.push("block.0", render_set(s.alphabet(), &m.extra));
            r.push("language-stable", m.language_stable);
            r.push("letters-in-subshift", m.letters_in_subshift);
        }
        MPrimitivity::NotMPrimitive(why) => r.push("m-primitive", format!("no, {why}")),
    }
}

fn language(s: &Substitution, o: &Opts, r: &mut Report) -> Result<()> {
    r.param("cap", o.cap);
    let l = factor_language(s, o.cap.max(1));
    r.push("status", format!("{:?}", l.status()));
    for n in 1..=l.cap() {
        r.push(format!("count.{n}"), l.of_length(n).len());
    }
    for w in l.sorted() {
        r.push("word", s.render(&w));
    }
    Ok(())
}

fn classify(s: &Substitution, o: &Opts, r: &mut Report) -> Result<()> {
    r.param("cap", o.cap);
    classification(s, o, r);
    Ok(())
}

fn periodic(s: &Substitution, o: &Opts, r: &mut Report) -> Result<()> {
    r.param("cap", o.cap);
    r.param("radius", o.radius);
    match periodicity_witness_search(s, o.cap, 4) {
        Some(u) => r.push("periodic-word", s.render(&u)),
        None => r.push("periodic-word", format!("none up to length {}", o.cap)),
    }
    let first = s.first_letter_map();
    let a = s.letters().find(|&a| first[a.index()] == a).unwrap_or(Letter(0));
    let len = 4 * o.radius.max(1) + 1;
    let mut x = vec![a];
    for _ in 0..64 {
        if x.len() >= len {
            break;
        }
        x = s.apply(&x);
    }
    r.push("row.start", s.alphabet().label(a));
    r.push("row.length", x.len().min(len));
    match eventually_periodic_check(&x[..x.len().min(len)], 0, o.radius) {
        Some((n0, m)) => r.push("row.period", format!("{m} from {n0}")),
        None => r.push("row.period", format!("none up to {}", o.radius)),
    }
    Ok(())
}

fn nesting(s: &Substitution, r: &mut Report) -> Result<()> {
    let sys = nesting_system(s)?;
    let a = s.alphabet();
    r.push("words", sys.vocabulary.len());
    for (i, w) in sys.vocabulary.iter().enumerate() {
        let rule: Vec<String> = sys.rule[i].iter().map(|&j| sys.vocabulary[j].render(a)).collect();
        r.push(format!("w{}", i + 1), format!("{} -> {}", w.render(a), rule.join(" ")));
    }
    let counts: Vec<String> = sys.vocabulary.iter().map(|w| w.base().len().to_string()).collect();
    r.push("top-counts", counts.join(" "));
    Ok(())
}

fn minimal(s: &Substitution, o: &Opts, r: &mut Report) -> Result<()> {
    r.param("cap", o.cap);
    let comps = minimal_components(s, o.cap);
    r.push("components", comps.len());
    for (i, c) in comps.iter().enumerate() {
        let k = i + 1;
        r.push(format!("component.{k}.seeds"), render_set(s.alphabet(), &c.seeds));
        r.push(format!("component.{k}.letters"), render_set(s.alphabet(), &c.letters));
        match c.pair {
            Some(p) => r.push(
                format!("component.{k}.pair"),
                format!("{}.{} p = {}", s.alphabet().label(p.r), s.alphabet().label(p.l), p.p),
            ),
            None => r.push(format!("component.{k}.pair"), "none"),
        }
    }
    m_primitive_lines(s, o, r);
    Ok(())
}

fn returns(s: &Substitution, o: &Opts, r: &mut Report) -> Result<()> {
    r.param("cap", o.cap);
    let rs = return_words(s, o.cap)?;
    for p in &rs.pairs {
        r.push("pair", format!("{}.{} p = {}", s.alphabet().label(p.r), s.alphabet().label(p.l), p.p));
    }
    r.push("power", rs.power);
    for (i, w) in rs.words.iter().enumerate() {
        r.push(format!("v{}", i + 1), s.render(w));
    }
    r.push("return-words", words(s, &rs.words));
    Ok(())
}

fn derive(s: &Substitution, o: &Opts, r: &mut Report) -> Result<()> {
    r.param("cap", o.cap);
    r.param("p-max", PROPER_SEARCH);
    let m = diagram_via_derivative_at(s, o.cap)?;
    r.push("power", m.returns.power);
    for (i, w) in m.returns.words.iter().enumerate() {
        r.push(format!("phi.v{}", i + 1), s.render(w));
    }
    r.push("return-words", words(s, &m.returns.words));
    rules(r, "tau", &m.tau);
    r.push("proper", format!("yes, p = {}", m.proper));
    let counts: Vec<String> = m.diagram.top_counts().iter().map(usize::to_string).collect();
    r.push("top-counts", counts.join(" "));
    Ok(())
}

struct Model {
    diagram: StationaryOrderedDiagram,
    /// Letter sequence of each level-1 tower, read by top rank.
    towers: Vec<Word>,
}

fn model(s: &Substitution, o: &Opts) -> Result<Model> {
    match o.method {
        Method::Nesting => {
            let sys = nesting_system(s)?;
            let diagram = crate::constructions::nesting_diagram(s)?;
            Ok(Model { diagram, towers: sys.vocabulary.iter().map(|w| w.base()).collect() })
        }
        Method::Derivative => {
            let m = diagram_via_derivative_at(s, o.cap)?;
            Ok(Model { diagram: m.diagram, towers: m.returns.words })
        }
    }
}

fn dot(m: &Model, depth: usize) -> Result<String> {
    let d = m.diagram.unroll(depth.max(1));
    d.validate().map_err(|v| {
        Error::InvalidArgument(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
    })?;
    Ok(export_dot(&d))
}

fn diagram_report(d: &StationaryOrderedDiagram, r: &mut Report) {
    r.push("vertices", d.len());
    rules(r, "read", &d.read_substitution());
    let counts: Vec<String> = d.top_counts().iter().map(usize::to_string).collect();
    r.push("top-counts", counts.join(" "));
    let ext = d.extremal_paths();
    let show = |p: &crate::bratteli::ExtremalPath| {
        p.period.iter().map(|&a| d.alphabet().label(a)).collect::<Vec<_>>().join(" ")
    };
    for p in &ext.minimal {
        r.push("minimal-path", show(p));
    }
    for p in &ext.maximal {
        r.push("maximal-path", show(p));
    }
}

fn read(s: &Substitution, o: &Opts, r: &mut Report) -> Result<()> {
    r.param("method", o.method.name());
    r.param("cap", o.cap);
    let m = model(s, o)?;
    diagram_report(&m.diagram, r);
    let k = encoding_power(&m.diagram, 8)
        .ok_or_else(|| Error::InvalidArgument("no power up to 8 covers the top counts".into()))?;
    let e = multi_edge_encoding_power(&m.diagram, k)?;
    r.push("encoding.power", e.power);
    rules(r, "encoding.tau", &e.tau);
    Ok(())
}

fn vershik(s: &Substitution, o: &Opts, r: &mut Report) -> Result<()> {
    r.param("method", o.method.name());
    r.param("cap", o.cap);
    r.param("steps", o.steps);
    let m = model(s, o)?;
    let d = &m.diagram;
    let start_vertex = d.extremal_paths().minimal[0].period[0];
    let start = min_path(d, 1, start_vertex.index());
    r.push("start", format!("{:?}", start));
    let mut orbit = Orbit::stationary(d, start, MaxToMin::Forced);
    let mut labels = Vec::with_capacity(o.steps);
    let mut letters = Vec::with_capacity(o.steps);
    for i in 0..o.steps {
        if i > 0 {
            orbit.step()?;
        }
        let v = orbit.vertex(1)?;
        labels.push(d.vertex_label(1, v).to_string());
        letters.push(m.towers[v][orbit.top_rank()]);
    }
    if o.steps > 0 {
        r.push("coding.level1", labels.join(" "));
        r.push("coding.letters", s.render(&letters));
    }
    Ok(())
}

fn recognize(s: &Substitution, o: &Opts, r: &mut Report) -> Result<()> {
    r.param("radius", o.radius);
    r.param("depth", o.depth);
    r.param("seed", o.seed);
    let first = s.first_letter_map();
    let class = s.classify_letters();
    let a = s
        .letters()
        .find(|&a| class.is_long(a) && first[a.index()] == a)
        .ok_or_else(|| Error::InvalidArgument("no long letter starts its own image".into()))?;
    let len = 2 * o.radius.max(1);
    let mut x = vec![a];
    for _ in 0..64 {
        if x.len() >= 2 * len {
            break;
        }
        x = s.apply(&x);
    }
    if x.len() < len {
        return Err(Error::InvalidArgument("expansion does not grow".into()));
    }
    let room = (x.len() - len) as u64 + 1;
    let at = (x.len() - len) / 2;
    let at = (at as u64 + o.seed) % room;
    let w = &x[at as usize..at as usize + len];
    r.push("window.start", at);
    r.push("window", s.render(w));
    match recognize_window(s, w, o.depth.max(1))? {
        Recognition::Unique(chain) => {
            r.push("result", "unique");
            for (k, level) in chain.levels.iter().enumerate() {
                let cuts: Vec<String> = level.cuts.iter().map(isize::to_string).collect();
                r.push(format!("level.{}.core", k + 1), format!("{} {}", level.core.0, level.core.1));
                r.push(format!("level.{}.cuts", k + 1), cuts.join(" "));
                r.push(format!("level.{}.parent", k + 1), s.render(&level.parent()));
            }
        }
        Recognition::Ambiguous(rep) => {
            r.push("result", format!("ambiguous at level {}", rep.level));
            r.push("alternatives", rep.alternatives.len());
        }
    }
    Ok(())
}

fn jsymbol(s: &Substitution, o: &Opts, r: &mut Report) -> Result<()> {
    r.param("depth", o.depth);
    let a = match &o.letter {
        Some(l) => s.letter(l).ok_or_else(|| Error::UnknownLetter(l.clone()))?,
        None => Letter(0),
    };
    let sym = build_j_symbol(s, a.index(), o.depth);
    r.push("symbol", &sym.base);
    r.push("width", sym.width());
    for (i, line) in sym.render().lines().enumerate() {
        r.push(format!("row.{i}"), line[3..].to_string());
    }
    Ok(())
}

fn lambda(s: &Substitution, o: &Opts, r: &mut Report) -> Result<()> {
    r.param("radius", o.radius);
    r.param("depth", o.depth);
    let seeds = lambda_seeds(s)?;
    r.push("seeds", seeds.len());
    for seed in seeds {
        let key = format!("seed.{}{}", s.alphabet().label(seed.a), s.alphabet().label(seed.b));
        let w = lambda_window(s, seed, o.radius);
        r.push(format!("{key}.p"), seed.p);
        r.push(format!("{key}.window"), s.alphabet().render_dotted(&w.letters, w.dot));
        let verdict = match core_membership(s, &w, o.depth) {
            Membership::Consistent => format!("consistent for n = {}", o.depth),
            Membership::Refuted(k) => format!("refuted at level {k}"),
        };
        r.push(format!("{key}.core"), verdict);
    }
    Ok(())
}
