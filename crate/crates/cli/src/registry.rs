//! The `list` command: a catalog of every problem, algorithm, and operator
//! name with its parameter syntax.

use crate::spec::{ALGOS, PROBLEMS};

pub struct CatalogEntry {
    pub category: &'static str,
    pub name: &'static str,
    pub syntax: &'static str,
    pub note: &'static str,
}

pub const SELECTION: &[CatalogEntry] = &[
    entry("selection", "proportionate", "proportionate", "fitness-proportionate roulette (fitness must be positive; see --sigma-scale / --shift-fitness)"),
    entry("selection", "sus", "sus", "stochastic universal sampling"),
    entry("selection", "tournament", "tournament:k", "k entrants with replacement, best wins"),
    entry("selection", "truncation", "truncation:k", "uniform over the k best"),
    entry("selection", "linear-rank", "linear-rank:eta", "linear ranking, expected copies of best = eta in [1,2]"),
    entry("selection", "exp-rank", "exp-rank:c", "exponential ranking with base c in (0,1)"),
    entry("selection", "boltzmann", "boltzmann:t0,tmin,schedule", "Boltzmann weights; schedule constant|linear|exponential"),
    entry("selection", "random", "random", "uniform, fitness ignored"),
];

pub const MUTATION: &[CatalogEntry] = &[
    entry("mutation (bits)", "bitflip", "bitflip:m", "flip each bit with probability m"),
    entry("mutation (real)", "gaussian", "gaussian:sigma", "add N(0, sigma) to every component"),
    entry("mutation (real)", "cauchy", "cauchy:scale", "add Cauchy noise to every component"),
    entry("mutation (real)", "uniform", "uniform:w", "add U(-w, w) to every component"),
    entry("mutation (integer)", "randomchange", "randomchange:m", "redraw each component with probability m"),
    entry("mutation (permutation)", "swap", "swap", "exchange two random elements"),
    entry("mutation (permutation)", "adjswap", "adjswap", "exchange two adjacent elements"),
    entry("mutation (permutation)", "insertion", "insertion", "remove one element, reinsert elsewhere"),
    entry("mutation (permutation)", "reversal", "reversal", "reverse a random segment"),
    entry("mutation (permutation)", "scramble", "scramble", "shuffle a random segment"),
    entry("mutation (permutation)", "uscramble", "uscramble:u", "shuffle positions marked with probability u"),
    entry("mutation (permutation)", "cycle", "cycle:kmax", "rotate a random cycle of 2..=kmax elements"),
    entry("mutation (permutation)", "threeopt", "threeopt", "random 3-opt style segment rearrangement"),
    entry("mutation (permutation)", "blockmove", "blockmove", "move a random block"),
    entry("mutation (permutation)", "blockswap", "blockswap", "swap two random non-overlapping blocks"),
    entry("mutation (permutation)", "windowed", "windowed:base,w", "base move with indices within distance w; base swap|insertion|reversal|scramble|blockmove"),
];

pub const CROSSOVER: &[CatalogEntry] = &[
    entry("crossover (vector)", "onepoint", "onepoint", "single-point exchange"),
    entry("crossover (vector)", "twopoint", "twopoint", "two-point exchange"),
    entry("crossover (vector)", "kpoint", "kpoint:k", "k-point exchange"),
    entry("crossover (vector)", "uniformx", "uniformx:p", "exchange each index with probability p (default 0.5)"),
    entry("crossover (permutation)", "cx", "cx", "cycle crossover"),
    entry("crossover (permutation)", "pmx", "pmx", "partially matched crossover"),
    entry("crossover (permutation)", "upmx", "upmx:u", "uniform PMX, per-index probability u (default 1/3)"),
    entry("crossover (permutation)", "ox", "ox", "order crossover"),
    entry("crossover (permutation)", "nwox", "nwox", "non-wrapping order crossover"),
    entry("crossover (permutation)", "ox2", "ox2", "order crossover 2"),
    entry("crossover (permutation)", "uobx", "uobx", "uniform order-based crossover"),
    entry("crossover (permutation)", "pbx", "pbx", "position-based crossover"),
    entry("crossover (permutation)", "er", "er", "edge recombination"),
    entry("crossover (permutation)", "eer", "eer", "enhanced edge recombination"),
    entry("crossover (permutation)", "ppx", "ppx", "precedence-preserving crossover"),
    entry("crossover (permutation)", "uppx", "uppx:u", "uniform precedence-preserving crossover (default 0.5)"),
];

const fn entry(
    category: &'static str,
    name: &'static str,
    syntax: &'static str,
    note: &'static str,
) -> CatalogEntry {
    CatalogEntry {
        category,
        name,
        syntax,
        note,
    }
}

pub fn render_catalog() -> String {
    let mut out = String::new();
    out.push_str("problems:\n");
    for (name, repr) in PROBLEMS {
        out.push_str(&format!("  {name}  ({} genome)\n", repr.describe()));
    }
    out.push_str("algorithms:\n");
    for algo in ALGOS {
        out.push_str(&format!("  {algo}\n"));
    }
    for (title, entries) in [
        ("selection schemes:", SELECTION),
        ("mutation operators:", MUTATION),
        ("crossover operators:", CROSSOVER),
    ] {
        out.push_str(title);
        out.push('\n');
        for e in entries {
            out.push_str(&format!(
                "  {:<14} {:<28} {:<24} {}\n",
                e.name, e.syntax, e.category, e.note
            ));
        }
    }
    out.push_str(
        "flags: --sigma-scale C applies sigma scaling; --shift-fitness shifts fitness positive\n",
    );
    out
}
