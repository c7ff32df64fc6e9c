use std::fmt::Write;

use num_complex::Complex64;
use tetra_core::cube::{self, Coefficients};
use tetra_core::graph;
use tetra_core::lattice::{self, LatticeSpec, NodeOrder};
use tetra_core::quandle;
use tetra_core::roseman;
use tetra_core::tetramap::identities::{operator_identities, set_identities, Expectation};
use tetra_core::tetramap::{closure_report, dirs_label, verify_word, SlotMap, TetraMap, TransposeFamily};
use tetra_core::{Error, Guards, Result};

use crate::config::{self, Header};
use crate::{ChiArgs, Cli, CocycleAction, Command, CubeAction, LatticeAction, LatticeArgs, QuandleAction, RosemanAction, TeAction};

/// Text to print and the verdict that selects the exit status.
pub struct Report {
    pub text: String,
    pub verdict: Option<bool>,
}

struct Out {
    text: String,
    verdict: Option<bool>,
}

impl Out {
    fn new(header: &Header) -> Self {
        Out { text: format!("{}\n", header.render()), verdict: None }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    /// Conjunction with any verdict already recorded.
    fn verdict(&mut self, v: bool) {
        self.verdict = Some(self.verdict.unwrap_or(true) && v);
    }

    fn done(self) -> Result<Report> {
        Ok(Report { text: self.text, verdict: self.verdict })
    }
}

pub fn error_line(e: &Error) -> String {
    match e {
        Error::TooLarge { guard, size, limit } => format!("error=too-large guard={guard} size={size:e} limit={limit:e}"),
        Error::Syntax { line, msg } => format!("error=syntax line={line} message=\"{msg}\""),
        other => format!("error=invalid message=\"{other}\""),
    }
}

/// Complex value rounded to 9 decimals, with negative zero printed as zero.
pub fn complex(z: Complex64) -> String {
    let r = |x: f64| {
        let v = (x * 1e9).round() / 1e9;
        if v == 0.0 {
            0.0
        } else {
            v
        }
    };
    let (re, im) = (r(z.re), r(z.im));
    if im < 0.0 {
        format!("{re:.9}-{:.9}i", -im)
    } else {
        format!("{re:.9}+{im:.9}i")
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let guards = config::guards(&cli.guards)?;
    match &cli.command {
        Command::Te { action } => te(action, &guards),
        Command::Cocycle { action } => cocycle(action, &guards),
        Command::Cube { action } => cube_cmd(action, &guards),
        Command::Chi(args) => chi(args, &guards),
        Command::Roseman { action } => roseman_cmd(action, &guards),
        Command::Quandle { action } => quandle_cmd(action, &guards),
        Command::Lattice { action } => match action {
            LatticeAction::Z(args) => lattice_z(args, &guards),
        },
        Command::Closure { p, k } => {
            let mut h = Header::new("closure");
            let p = h.pick("p", *p, 5);
            let k = h.pick("k", *k, 2);
            let set = tetra_core::tetramap::ColorSet::reduced(p, k)?;
            let r = closure_report(&set)?;
            let mut out = Out::new(&h);
            out.line(format!("set={} size={}", set, set.len()));
            let show = |o: Option<u64>| o.map_or("closed".to_string(), |v| format!("leaves@{v}"));
            out.line(format!("inversion={}", show(r.inversion)));
            out.line(format!("negation={}", show(r.negation)));
            out.line(format!("negated_inversion={}", show(r.negated_inversion)));
            out.done()
        }
    }
}

fn parse_dirs(d: &str) -> Result<u32> {
    let mut mask = 0;
    for c in d.chars() {
        match c {
            '1'..='3' => mask |= 1 << (c as u32 - '1' as u32),
            _ => return Err(Error::InvalidParameter(format!("directions `{d}`: use digits 1, 2, 3"))),
        }
    }
    Ok(mask)
}

fn te(action: &TeAction, guards: &Guards) -> Result<Report> {
    match action {
        TeAction::Verify(sol) => {
            let mut h = Header::new("te-verify");
            let phi = sol.resolve(&mut h)?;
            let mut out = Out::new(&h);
            let r = phi.verify_te();
            out.line(r.to_string());
            out.verdict(r.holds());
            out.done()
        }
        TeAction::Transposes(sol) => {
            let mut h = Header::new("te-transposes");
            let phi = sol.resolve(&mut h)?;
            let mut out = Out::new(&h);
            let fam = TransposeFamily::new(&phi);
            for mask in 1..8 {
                let exists = fam.get(mask).is_ok();
                out.line(format!("transpose=t{} exists={exists}", dirs_label(mask)));
                out.verdict(exists);
            }
            if fam.all_exist() {
                let inv = phi.inverse();
                let full = fam.get(7)? == &inv;
                out.line(format!("t123_is_inverse={full}"));
                out.verdict(full);
                for i in 0..3 {
                    let single = fam.get(1 << i)?.inverse();
                    let pair = fam.get(7 ^ (1 << i))?;
                    let ok = &single == pair;
                    out.line(format!("inverse_t{}_is_t{}={ok}", dirs_label(1 << i), dirs_label(7 ^ (1 << i))));
                    out.verdict(ok);
                }
            }
            out.done()
        }
        TeAction::Identities(sol) => {
            let mut h = Header::new("te-identities");
            let phi = sol.resolve(&mut h)?;
            let mut out = Out::new(&h);
            let fam = TransposeFamily::new(&phi);
            for id in set_identities() {
                let r = tetra_core::tetramap::verify_word_with(&phi, &fam, &id.lhs, &id.rhs, guards)?;
                let required = id.expectation == Expectation::Holds;
                let tag = if required { "" } else { " reported=1" };
                out.line(format!("identity={} result={r}{tag}", id.name));
                if required {
                    out.verdict(r.holds());
                }
            }
            out.done()
        }
        TeAction::Word { solution, lhs, rhs, arity } => {
            let mut h = Header::new("te-word");
            let phi = solution.resolve(&mut h)?;
            h.set("arity", arity);
            let (l, r) = (SlotMap::parse(*arity, lhs)?, SlotMap::parse(*arity, rhs)?);
            let mut out = Out::new(&h);
            out.line(format!("lhs=\"{l}\" rhs=\"{r}\""));
            let rep = verify_word(&phi, &l, &r, guards)?;
            out.line(format!("word={rep}"));
            out.verdict(rep.holds());
            out.done()
        }
        TeAction::Print { solution, dirs, inverse } => {
            let mut h = Header::new("te-print");
            let phi = solution.resolve(&mut h)?;
            let mut map: TetraMap = phi;
            if let Some(d) = dirs {
                h.set("dirs", d);
                map = map.partial_transpose(parse_dirs(d)?)?;
            }
            if *inverse {
                h.set("inverse", true);
                map = map.inverse();
            }
            let mut out = Out::new(&h);
            out.text.push_str(&map.to_text());
            out.done()
        }
    }
}

fn cocycle(action: &CocycleAction, guards: &Guards) -> Result<Report> {
    match action {
        CocycleAction::Verify(args) => {
            let mut h = Header::new("cocycle-verify");
            let phi = args.solution.resolve(&mut h)?;
            let coc = args.cocycle.resolve(&phi, &mut h)?;
            let mut out = Out::new(&h);
            let r = cube::verify_cocycle(&phi, &coc)?;
            out.line(r.to_string());
            out.verdict(r.holds());
            out.done()
        }
        CocycleAction::Search { solution, bound } => {
            let mut h = Header::new("cocycle-search");
            let phi = solution.resolve(&mut h)?;
            h.set("bound", bound);
            let mut out = Out::new(&h);
            let hits = cube::search_monomial_cocycles(&phi, *bound)?;
            for hit in &hits {
                let mut line = format!("candidate {}", hit.cocycle);
                for n in &hit.normalization {
                    let (i, j) = n.direction;
                    write!(line, " normalized_{i}{j}={} unit_weight_{i}{j}={}", n.normalized(), n.unit_weight()).unwrap();
                }
                out.line(line);
            }
            out.line(format!("candidates={}", hits.len()));
            out.done()
        }
        CocycleAction::Normalized(args) => {
            let mut h = Header::new("cocycle-normalized");
            let phi = args.solution.resolve(&mut h)?;
            let coc = args.cocycle.resolve(&phi, &mut h)?;
            let s = args.cocycle.exponent(&mut h);
            let a = cube::build_a(&phi, &coc, s)?;
            let mut out = Out::new(&h);
            for dir in [(1, 2), (2, 3), (1, 3)] {
                let n = cube::check_normalized(&a, dir)?;
                out.line(format!(
                    "direction={}{} normalized={} unit_weight={} forward={} backward={}",
                    dir.0,
                    dir.1,
                    n.normalized(),
                    n.unit_weight(),
                    n.forward,
                    n.backward
                ));
            }
            out.done()
        }
        CocycleAction::OperatorTe(args) => {
            let mut h = Header::new("cocycle-operator-te");
            let phi = args.solution.resolve(&mut h)?;
            let coc = args.cocycle.resolve(&phi, &mut h)?;
            let s = args.cocycle.exponent(&mut h);
            let a = cube::build_a(&phi, &coc, s)?;
            let mut out = Out::new(&h);
            for id in operator_identities() {
                let r = tetra_core::tetramap::verify_monomial_word(&a, &id.lhs, &id.rhs, guards)?;
                let required = id.expectation == Expectation::Holds;
                let tag = if required { "" } else { " reported=1" };
                out.line(format!("identity={} result={r}{tag}", id.name));
                if required {
                    out.verdict(r.holds());
                }
            }
            out.done()
        }
    }
}

fn cube_cmd(action: &CubeAction, guards: &Guards) -> Result<Report> {
    match action {
        CubeAction::Boundary { solution, n } => {
            let mut h = Header::new("cube-boundary");
            let phi = solution.resolve(&mut h)?;
            h.set("n", n);
            let d = cube::boundary_matrix(*n, &phi, guards)?;
            let mut out = Out::new(&h);
            let (r, c) = d.shape();
            out.line(format!("rows={r} cols={c} nnz={} max_abs={}", d.nnz(), d.max_abs()));
            out.done()
        }
        CubeAction::Square { solution, n } => {
            let mut h = Header::new("cube-square");
            let phi = solution.resolve(&mut h)?;
            h.set("n", n);
            if *n < 3 {
                return Err(Error::InvalidParameter("d_{n-1}·d_n needs n >= 3".into()));
            }
            let lower = cube::boundary_matrix(n - 1, &phi, guards)?;
            let upper = cube::boundary_matrix(*n, &phi, guards)?;
            let zero = lower.mul(&upper)?.is_zero();
            let mut out = Out::new(&h);
            out.line(format!("d{}_d{}_zero={zero}", n - 1, n));
            out.verdict(zero);
            out.done()
        }
        CubeAction::Homology { solution, n, coefficients } => {
            let mut h = Header::new("cube-homology");
            let phi = solution.resolve(&mut h)?;
            h.set("n", n);
            h.set("coefficients", coefficients);
            let coeff = match coefficients.as_str() {
                "rational" => Coefficients::Rational,
                q => Coefficients::Prime(
                    q.parse()
                        .ok()
                        .filter(|&q| tetra_core::algebra::is_prime(q))
                        .ok_or_else(|| Error::InvalidParameter(format!("coefficients `{q}`: use rational or a prime")))?,
                ),
            };
            let d = cube::homology_dims(*n, &phi, coeff, guards)?;
            let mut out = Out::new(&h);
            out.line(format!("kernel={} image={} homology={}", d.kernel, d.image, d.homology));
            out.done()
        }
    }
}

fn chi(args: &ChiArgs, guards: &Guards) -> Result<Report> {
    let mut h = Header::new("chi");
    h.set("graph", &args.graph);
    let g = config::graph(&args.graph)?;
    let phi = args.solution.resolve(&mut h)?;
    let coc = args.cocycle.resolve(&phi, &mut h)?;
    let s = args.cocycle.exponent(&mut h);
    let character = config::character(args.character.as_deref(), coc.group(), &mut h)?;
    let value = graph::chi(&g, &phi, &coc, s, guards)?;
    let mut out = Out::new(&h);
    out.line(format!("components={} {}", g.components(), g.resolve_singular_set()));
    out.line(format!("colorings={}", graph::count_colorings(&g, &phi, guards)?));
    out.line(format!("chi={value}"));
    if let Some(c) = character {
        out.line(format!("chi_value={}", complex(value.evaluate(&c))));
    }
    out.done()
}

fn roseman_cmd(action: &RosemanAction, guards: &Guards) -> Result<Report> {
    match action {
        RosemanAction::Check { mv, inner } => {
            let mut h = Header::new("roseman-check");
            h.set("move", mv);
            let phi = inner.solution.resolve(&mut h)?;
            let coc = inner.cocycle.resolve(&phi, &mut h)?;
            let s = inner.cocycle.exponent(&mut h);
            let r = roseman::check_move(*mv, &phi, &coc, s, guards)?;
            let mut out = Out::new(&h);
            out.line(r.to_string());
            out.verdict(r.verdict());
            out.done()
        }
        RosemanAction::Branch(inner) => {
            let mut h = Header::new("roseman-branch");
            let phi = inner.solution.resolve(&mut h)?;
            let coc = inner.cocycle.resolve(&phi, &mut h)?;
            let s = inner.cocycle.exponent(&mut h);
            let d = roseman::demo_moves_2_4(&phi, &coc, s, guards)?;
            let mut out = Out::new(&h);
            out.line(format!("before={} after={} differs={}", d.before, d.after, d.differs()));
            out.done()
        }
    }
}

fn quandle_cmd(action: &QuandleAction, guards: &Guards) -> Result<Report> {
    match action {
        QuandleAction::Verify { quandle: desc } => {
            let mut h = Header::new("quandle-verify");
            h.set("quandle", desc);
            let q = config::quandle(desc)?;
            let r = quandle::verify_quandle(&q);
            let mut out = Out::new(&h);
            out.line(format!("size={} {r}", q.len()));
            out.verdict(r.holds());
            out.done()
        }
        QuandleAction::Boundary { quandle: desc, n } => {
            let mut h = Header::new("quandle-boundary");
            h.set("quandle", desc);
            h.set("n", n);
            let q = config::quandle(desc)?;
            let b = quandle::quandle_boundary(*n, &q, guards)?;
            let mut out = Out::new(&h);
            let (rr, rc) = b.rack.shape();
            let (qr, qc) = b.quotient.shape();
            out.line(format!("rack_rows={rr} rack_cols={rc} quandle_rows={qr} quandle_cols={qc}"));
            if *n >= 3 {
                let lower = quandle::quandle_boundary(n - 1, &q, guards)?;
                let rack = lower.rack.mul(&b.rack)?.is_zero();
                let quot = lower.quotient.mul(&b.quotient)?.is_zero();
                out.line(format!("rack_square_zero={rack} quandle_square_zero={quot}"));
                out.verdict(rack && quot);
            }
            out.done()
        }
        QuandleAction::Cocycle { quandle: desc, theta, m } => {
            let mut h = Header::new("quandle-cocycle");
            h.set("quandle", desc);
            h.set("theta", theta);
            h.set("m", m);
            let q = config::quandle(desc)?;
            let t = config::theta(theta, &q, *m)?;
            let r = quandle::verify_q3cocycle(&t, &q)?;
            let mut out = Out::new(&h);
            out.line(r.to_string());
            out.verdict(r.holds());
            out.done()
        }
        QuandleAction::StateSum { quandle: desc, diagram, theta, m } => {
            let mut h = Header::new("quandle-state-sum");
            h.set("quandle", desc);
            h.set("diagram", diagram);
            h.set("theta", theta);
            h.set("m", m);
            let q = config::quandle(desc)?;
            let d = config::diagram(diagram)?;
            let t = config::theta(theta, &q, *m)?;
            let colorings = quandle::color_diagram(&d, &q, guards)?.len();
            let sum = quandle::state_sum(&d, &t, &q, guards)?;
            let mut out = Out::new(&h);
            out.line(format!("colorings={colorings}"));
            out.line(format!("state_sum={sum}"));
            out.done()
        }
    }
}

fn lattice_z(args: &LatticeArgs, guards: &Guards) -> Result<Report> {
    let mut h = Header::new("lattice-z");
    let spec = LatticeSpec::new(args.extent_k, args.extent_l, args.extent_m)?;
    h.set("K", args.extent_k);
    h.set("L", args.extent_l);
    h.set("M", args.extent_m);
    h.set("via", &args.via);
    let order: NodeOrder = args.order.parse()?;
    let phi = args.solution.resolve(&mut h)?;
    let coc = args.cocycle.resolve(&phi, &mut h)?;
    let s = args.cocycle.exponent(&mut h);
    let character = config::character(args.character.as_deref(), coc.group(), &mut h)?;
    let (direct, transfer) = match args.via.as_str() {
        "direct" => (true, false),
        "transfer" => (false, true),
        "both" => (true, true),
        v => return Err(Error::InvalidParameter(format!("--via `{v}`: use direct, transfer or both"))),
    };
    if transfer && character.is_none() && !args.exact {
        return Err(Error::InvalidParameter("the transfer route needs --character or --exact".into()));
    }
    let mut out = Out::new(&h);
    let mut direct_value = None;
    let mut direct_exact = None;
    if direct {
        let z = lattice::z_direct(spec, &phi, &coc, s, guards)?;
        out.line(format!("z_direct_exact={z}"));
        out.line(format!("states={}", z.augmentation()));
        if let Some(c) = &character {
            let v = c.eval(&z);
            out.line(format!("z_direct={}", complex(v)));
            direct_value = Some(v);
        }
        direct_exact = Some(z);
    }
    if transfer {
        let t = lattice::build_transfer_exact(spec, &phi, &coc, s, order, guards)?;
        out.line(format!("transfer_dim={}", t.dim()));
        if args.exact {
            let z = t.trace_power(spec.l());
            out.line(format!("z_transfer_exact={z}"));
            if let Some(d) = &direct_exact {
                out.line(format!("agree_exact={}", *d == z));
                out.verdict(*d == z);
            }
        }
        if let Some(c) = &character {
            let v = t.evaluate(c).trace_power(spec.l());
            out.line(format!("z_transfer={}", complex(v)));
            if let Some(d) = direct_value {
                let agree = (d - v).norm() <= 1e-9 * d.norm().max(1.0);
                out.line(format!("agree={agree}"));
                out.verdict(agree);
            }
        }
    }
    out.done()
}
