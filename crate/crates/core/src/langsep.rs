//! Regular-language front end: DFA parsing, transition semigroups of
//! product automata, and first-order separability via aperiodic pointlikes.

use std::collections::VecDeque;

use crate::bitset::Bitset;
use crate::closure::transformation_closure;
use crate::error::{Error, Result};
use crate::hom::FreeHom;
use crate::psat::henckell_pointlikes;
use crate::semigroup::Semigroup;
use crate::words::words_up_to;
use crate::Caps;

/// A complete deterministic finite automaton.
#[derive(Clone, Debug)]
pub struct Dfa {
    pub states: usize,
    pub alphabet: Vec<String>,
    pub init: usize,
    pub finals: Bitset,
    /// `delta[q * |alphabet| + a]`.
    pub delta: Vec<u32>,
}

impl Dfa {
    pub fn step(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.alphabet.len() + a] as usize
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let q = word.iter().fold(self.init, |q, &a| self.step(q, a));
        self.finals.contains(q)
    }

    pub fn accepts_empty(&self) -> bool {
        self.finals.contains(self.init)
    }
}

/// Parses the `.dfa` format: `states <n>`, `alphabet <l1> ...`, `init <q>`,
/// `final <q> ...`, and one `trans <q> <letter> <q'>` per edge. The delta
/// must be total and duplicate-free.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let mut states: Option<(usize, usize)> = None;
    let mut alphabet: Option<(usize, Vec<String>)> = None;
    let mut init: Option<(usize, usize)> = None;
    let mut finals: Option<(usize, Vec<usize>)> = None;
    let mut trans: Vec<(usize, usize, String, usize)> = Vec::new();

    let parse_state = |line: usize, tok: &str| -> Result<usize> {
        tok.parse()
            .map_err(|_| Error::Parse { line, msg: format!("bad state {tok:?}") })
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let Some((&kw, rest)) = toks.split_first() else { continue };
        match kw {
            "states" => {
                let [tok] = rest else {
                    return Err(Error::Parse { line, msg: "states takes one count".into() });
                };
                states = Some((line, parse_state(line, tok)?));
            }
            "alphabet" => {
                if rest.is_empty() {
                    return Err(Error::Parse { line, msg: "empty alphabet".into() });
                }
                alphabet = Some((line, rest.iter().map(|s| s.to_string()).collect()));
            }
            "init" => {
                let [tok] = rest else {
                    return Err(Error::Parse { line, msg: "init takes one state".into() });
                };
                init = Some((line, parse_state(line, tok)?));
            }
            "final" => {
                let mut f = Vec::new();
                for tok in rest {
                    f.push(parse_state(line, tok)?);
                }
                finals = Some((line, f));
            }
            "trans" => {
                let [q, letter, q2] = rest else {
                    return Err(Error::Parse {
                        line,
                        msg: "trans takes <state> <letter> <state>".into(),
                    });
                };
                trans.push((line, parse_state(line, q)?, letter.to_string(), parse_state(line, q2)?));
            }
            other => {
                return Err(Error::Parse { line, msg: format!("unknown keyword {other:?}") });
            }
        }
    }

    let (_, n) = states.ok_or(Error::Parse { line: 1, msg: "missing 'states'".into() })?;
    let (_, alphabet) = alphabet.ok_or(Error::Parse { line: 1, msg: "missing 'alphabet'".into() })?;
    let (init_line, init) = init.ok_or(Error::Parse { line: 1, msg: "missing 'init'".into() })?;
    let (final_line, final_list) =
        finals.ok_or(Error::Parse { line: 1, msg: "missing 'final'".into() })?;
    if n == 0 {
        return Err(Error::Parse { line: 1, msg: "a DFA needs at least one state".into() });
    }
    if init >= n {
        return Err(Error::Parse { line: init_line, msg: format!("init state {init} out of range") });
    }
    let mut fin = Bitset::empty(n);
    for q in final_list {
        if q >= n {
            return Err(Error::Parse {
                line: final_line,
                msg: format!("final state {q} out of range"),
            });
        }
        fin.insert(q);
    }
    let k = alphabet.len();
    let mut delta = vec![u32::MAX; n * k];
    for (line, q, letter, q2) in trans {
        let a = alphabet.iter().position(|l| *l == letter).ok_or_else(|| Error::Parse {
            line,
            msg: format!("letter {letter:?} is not in the alphabet"),
        })?;
        if q >= n || q2 >= n {
            return Err(Error::Parse { line, msg: "transition state out of range".into() });
        }
        if delta[q * k + a] != u32::MAX {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate transition ({q}, {letter})"),
            });
        }
        delta[q * k + a] = q2 as u32;
    }
    for q in 0..n {
        for a in 0..k {
            if delta[q * k + a] == u32::MAX {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("missing transition ({q}, {})", alphabet[a]),
                });
            }
        }
    }
    Ok(Dfa { states: n, alphabet, init, finals: fin, delta })
}

/// The transition semigroup of the product automaton, with the images of
/// the two acceptance conditions.
pub struct Recognizer {
    pub sg: Semigroup,
    pub phi: FreeHom,
    pub f1: Bitset,
    pub f2: Bitset,
}

pub fn build_recognizer(d1: &Dfa, d2: &Dfa, caps: Caps) -> Result<Recognizer> {
    if d1.alphabet != d2.alphabet {
        return Err(Error::Precondition(
            "build_recognizer: the two DFAs must share one alphabet".into(),
        ));
    }
    let (n1, n2) = (d1.states, d2.states);
    let deg = n1 * n2;
    let maps: Vec<Vec<usize>> = (0..d1.alphabet.len())
        .map(|a| {
            (0..deg)
                .map(|pq| {
                    let (q1, q2) = (pq / n2, pq % n2);
                    d1.step(q1, a) * n2 + d2.step(q2, a)
                })
                .collect()
        })
        .collect();
    let gen = transformation_closure(&maps, caps.closure)?;
    let phi = FreeHom::new(
        d1.alphabet.clone(),
        gen.sg.clone(),
        gen.gen_indices.iter().map(|&i| i as u32).collect(),
    )?;
    let start = d1.init * n2 + d2.init;
    let mut f1 = Bitset::empty(gen.sg.size());
    let mut f2 = Bitset::empty(gen.sg.size());
    for (i, m) in gen.elements.iter().enumerate() {
        let dest = m[start];
        if d1.finals.contains(dest / n2) {
            f1.insert(i);
        }
        if d2.finals.contains(dest % n2) {
            f2.insert(i);
        }
    }
    Ok(Recognizer { sg: gen.sg, phi, f1, f2 })
}

impl Recognizer {
    /// Membership through the semigroup agrees with direct DFA runs on all
    /// words up to `max_len`.
    pub fn check_agreement(&self, d1: &Dfa, d2: &Dfa, max_len: usize) -> Result<()> {
        for w in words_up_to(self.phi.alphabet.len(), max_len) {
            let s = self.phi.eval(&w)?;
            if self.f1.contains(s) != d1.accepts(&w) || self.f2.contains(s) != d2.accepts(&w) {
                return Err(Error::Verification(format!(
                    "recognizer disagrees with the DFAs on a word of length {}",
                    w.len()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Separable,
    /// The languages intersect: a shared word.
    CommonWord(Vec<usize>),
    /// A pointlike pair meeting both acceptance images.
    PointlikePair { s1: usize, s2: usize },
}

pub struct Separation {
    pub recognizer: Recognizer,
    pub verdict: Verdict,
}

impl Separation {
    pub fn is_separable(&self) -> bool {
        self.verdict == Verdict::Separable
    }

    /// The CLI verdict line.
    pub fn render(&self, alphabet: &[String]) -> String {
        match &self.verdict {
            Verdict::Separable => "SEPARABLE".to_string(),
            Verdict::CommonWord(w) => {
                let word: Vec<String> = w.iter().map(|&a| alphabet[a].clone()).collect();
                format!("INSEPARABLE witness=word:{}", word.join(""))
            }
            Verdict::PointlikePair { s1, s2 } => {
                let sg = &self.recognizer.sg;
                let (a, b) = (*s1.min(s2), *s1.max(s2));
                format!("INSEPARABLE witness=pair:{{{}, {}}}", sg.label(a), sg.label(b))
            }
        }
    }
}

/// Decides FO-separability of `L(d1)` from `L(d2)`: inseparable exactly
/// when the languages intersect (witnessed by a word) or some aperiodic
/// pointlike set meets both acceptance images (witnessed by a pair).
/// The empty word must lie in neither language.
pub fn decide_fo_separability(d1: &Dfa, d2: &Dfa, caps: Caps) -> Result<Separation> {
    if d1.accepts_empty() || d2.accepts_empty() {
        return Err(Error::Unsupported(
            "separation works in A+: the empty word may not be accepted".into(),
        ));
    }
    if d1.alphabet != d2.alphabet {
        return Err(Error::Precondition(
            "decide_fo_separability: the two DFAs must share one alphabet".into(),
        ));
    }
    // Disjointness first: search the product automaton for a common word.
    if let Some(word) = common_word(d1, d2) {
        let recognizer = build_recognizer(d1, d2, caps)?;
        return Ok(Separation { recognizer, verdict: Verdict::CommonWord(word) });
    }
    let recognizer = build_recognizer(d1, d2, caps)?;
    let family = henckell_pointlikes(&recognizer.sg, caps)?;
    for x in family.canonical_members() {
        if x.intersects(&recognizer.f1) && x.intersects(&recognizer.f2) {
            let s1 = x.iter().find(|&s| recognizer.f1.contains(s)).expect("intersects");
            let s2 = x.iter().find(|&s| recognizer.f2.contains(s)).expect("intersects");
            return Ok(Separation { recognizer, verdict: Verdict::PointlikePair { s1, s2 } });
        }
    }
    Ok(Separation { recognizer, verdict: Verdict::Separable })
}

/// Breadth-first search for a nonempty word accepted by both automata.
fn common_word(d1: &Dfa, d2: &Dfa) -> Option<Vec<usize>> {
    let (n2, k) = (d2.states, d1.alphabet.len());
    let deg = d1.states * n2;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; deg];
    let mut seen = vec![false; deg];
    let start = d1.init * n2 + d2.init;
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(pq) = queue.pop_front() {
        let (q1, q2) = (pq / n2, pq % n2);
        if pq != start && d1.finals.contains(q1) && d2.finals.contains(q2) {
            let mut word = Vec::new();
            let mut cur = pq;
            while let Some((prev, a)) = parent[cur] {
                word.push(a);
                cur = prev;
            }
            word.reverse();
            return Some(word);
        }
        for a in 0..k {
            let dest = d1.step(q1, a) * n2 + d2.step(q2, a);
            if !seen[dest] {
                seen[dest] = true;
                parent[dest] = Some((pq, a));
                queue.push_back(dest);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::dfa;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn parse_dfa_examples() {
        let d = parse_dfa("states 1\nalphabet a\ninit 0\nfinal 0\ntrans 0 a 0\n").unwrap();
        assert_eq!(d.states, 1);
        assert!(d.finals.contains(0));

        let err = parse_dfa("states 2\nalphabet a\ninit 0\nfinal 1\ntrans 0 a 1\n").unwrap_err();
        match err {
            Error::Parse { msg, .. } => assert!(msg.contains("missing transition (1, a)")),
            other => panic!("unexpected {other:?}"),
        }

        let err = parse_dfa(
            "states 1\nalphabet a\ninit 0\nfinal 0\ntrans 0 a 0\ntrans 0 a 0\n",
        )
        .unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 6);
                assert!(msg.contains("duplicate transition"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn recognizer_of_parity_pair_is_z2() {
        let d = parse_dfa(dfa::EVEN_AA).unwrap();
        let e = parse_dfa(dfa::ODD_A).unwrap();
        let r = build_recognizer(&d, &e, caps()).unwrap();
        assert_eq!(r.sg.size(), 2);
        assert!(r.sg.is_group());
        r.check_agreement(&d, &e, 6).unwrap();
    }

    #[test]
    fn recognizer_of_single_state_dfas_is_trivial() {
        let d = parse_dfa("states 1\nalphabet a\ninit 0\nfinal\ntrans 0 a 0\n").unwrap();
        let r = build_recognizer(&d, &d, caps()).unwrap();
        assert_eq!(r.sg.size(), 1);
    }

    #[test]
    fn recognizer_of_first_letter_pair_is_aperiodic() {
        let d = parse_dfa(dfa::A_FIRST).unwrap();
        let e = parse_dfa(dfa::B_FIRST).unwrap();
        let r = build_recognizer(&d, &e, caps()).unwrap();
        assert!(r.sg.size() <= 6);
        assert!(r.sg.is_aperiodic());
        r.check_agreement(&d, &e, 6).unwrap();
    }

    #[test]
    fn even_vs_odd_is_inseparable_with_a_pair() {
        let d = parse_dfa(dfa::EVEN_AA).unwrap();
        let e = parse_dfa(dfa::ODD_A).unwrap();
        let sep = decide_fo_separability(&d, &e, caps()).unwrap();
        match sep.verdict {
            Verdict::PointlikePair { s1, s2 } => assert_ne!(s1, s2),
            ref other => panic!("expected a pair, got {other:?}"),
        }
    }

    #[test]
    fn a_first_vs_b_first_is_separable() {
        let d = parse_dfa(dfa::A_FIRST).unwrap();
        let e = parse_dfa(dfa::B_FIRST).unwrap();
        let sep = decide_fo_separability(&d, &e, caps()).unwrap();
        assert!(sep.is_separable());
    }

    #[test]
    fn overlapping_languages_yield_a_word_witness() {
        let d = parse_dfa(dfa::A_PLUS).unwrap();
        let sep = decide_fo_separability(&d, &d, caps()).unwrap();
        assert_eq!(sep.verdict, Verdict::CommonWord(vec![0]));
        assert_eq!(sep.render(&d.alphabet), "INSEPARABLE witness=word:a");
    }

    #[test]
    fn empty_word_in_language_is_unsupported() {
        let d = parse_dfa("states 1\nalphabet a\ninit 0\nfinal 0\ntrans 0 a 0\n").unwrap();
        let e = parse_dfa(dfa::A_PLUS).unwrap();
        assert!(matches!(
            decide_fo_separability(&d, &e, caps()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn separability_is_symmetric_on_fixtures() {
        let pairs = [
            (dfa::EVEN_AA, dfa::ODD_A),
            (dfa::A_FIRST, dfa::B_FIRST),
        ];
        for (t1, t2) in pairs {
            let d = parse_dfa(t1).unwrap();
            let e = parse_dfa(t2).unwrap();
            let ab = decide_fo_separability(&d, &e, caps()).unwrap();
            let ba = decide_fo_separability(&e, &d, caps()).unwrap();
            assert_eq!(ab.is_separable(), ba.is_separable());
        }
    }

    #[test]
    fn aperiodic_disjoint_always_separates() {
        // If the recognizer is aperiodic and the languages are disjoint,
        // pointlikes are singletons, so the verdict must be separable.
        let d = parse_dfa(dfa::A_FIRST).unwrap();
        let e = parse_dfa(dfa::B_FIRST).unwrap();
        let r = build_recognizer(&d, &e, caps()).unwrap();
        assert!(r.sg.is_aperiodic());
        assert!(!r.f1.intersects(&r.f2));
        let sep = decide_fo_separability(&d, &e, caps()).unwrap();
        assert!(sep.is_separable());
    }
}
