//! Worked examples, checked verbatim.

use nanophrase::formal::{angle_bracket, count_subphrases, phi, theta, FormalSum};
use nanophrase::groups::{gamma_coordinates, generate_relations, group_structure};
use nanophrase::invariants::{
    linking_matrix, make_pattern_phrase, t_invariant, u_invariant, v4, PatternKind, TaggedValue, V4_WORDS,
};
use nanophrase::moves::{bounded_equiv, enumerate_reductions, shift, Equivalence, MoveKind, SearchBounds};
use nanophrase::{HomotopyData, Nanophrase, Symbol};

fn word(w: &str) -> Nanophrase {
    Nanophrase::parse(&format!("{w}:{}", "a".repeat(w.len() / 2)), &HomotopyData::gauss()).unwrap()
}

fn sum(text: &str, d: &HomotopyData) -> FormalSum {
    FormalSum::parse(text, d).unwrap()
}

#[test]
fn parse_examples() {
    let d = HomotopyData::parse("alpha: a b").unwrap();
    let p = Nanophrase::parse("AB|A|B:ab", &d).unwrap();
    assert_eq!((p.component_count(), p.rank()), (3, 2));
    let q = Nanophrase::parse("EBC|B|CE:abb", &d).unwrap();
    assert_eq!(q.rank(), 3);
    assert_eq!(word("ABACBC").rank(), 3);
    let g = HomotopyData::gauss();
    assert_eq!(Nanophrase::parse("ABA|0|B:aa", &g).unwrap().rank(), 2);
}

#[test]
fn subphrases_and_brackets() {
    let d = HomotopyData::parse("alpha: a b c").unwrap();
    let p = Nanophrase::parse("ABC|BA|C:abc", &d).unwrap();
    assert_eq!(p.subphrases().len(), 8);
    let q = Nanophrase::parse("AB|BA|0:ab", &d).unwrap();
    assert_eq!(count_subphrases(&q, &p), 1);
    let ps = FormalSum::from_phrase(&p);
    assert_eq!(angle_bracket(&sum("AB|BA|0:ab", &d), &ps).unwrap(), 1.into());
    assert_eq!(angle_bracket(&ps, &ps).unwrap(), 1.into());
    assert_eq!(angle_bracket(&sum("0|0|0:", &d), &ps).unwrap(), 1.into());
    // with a = b both A and B pair up with C
    let p_eq = sum("ABC|BA|C:aac", &d);
    assert_eq!(angle_bracket(&sum("AC|A|C:ac", &d), &p_eq).unwrap(), 2.into());
}

#[test]
fn theta_and_phi() {
    let d = HomotopyData::gauss();
    let x = sum("AB|AB:aa", &d);
    assert_eq!(theta(&x), sum("AB|AB:aa +2 A|A:a +0|0:", &d));
    assert_eq!(phi(&x), sum("AB|AB:aa -2 A|A:a +0|0:", &d));
    let y = sum("A|BAB:aa -AA|BB:aa", &d);
    assert_eq!(theta(&y), sum("A|BAB:aa +A|A:a -AA|BB:aa -AA|0:a", &d));
}

#[test]
fn patterns() {
    let d = HomotopyData::parse("alpha: a b").unwrap();
    let (a, b) = (Symbol(0), Symbol(1));
    let text = |k, r, i, j, y| make_pattern_phrase(k, r, i, j, a, y).unwrap().to_text(&d);
    assert_eq!(text(PatternKind::G, 2, 0, 1, None), "A|A:a");
    assert_eq!(text(PatternKind::E, 2, 0, 1, Some(b)), "AB|AB:ab");
    assert_eq!(text(PatternKind::F, 2, 0, 1, Some(b)), "AB|BA:ab");
    assert_eq!(text(PatternKind::P, 1, 0, 0, Some(b)), "ABAB:ab");
}

#[test]
fn linking_matrix_and_u_on_the_separating_pair() {
    let d = HomotopyData::parse("alpha: a b c\ntau: (b c)\nS: diagonal").unwrap();
    let (a, b) = (Symbol(0), Symbol(1));
    // labels a, b, tau(b)
    let p = Nanophrase::parse("ABAC|BC|0:abc", &d).unwrap();
    let q = Nanophrase::parse("ABAC|0|BC:abc", &d).unwrap();
    assert_eq!(linking_matrix(&p, &d).rows(), linking_matrix(&q, &d).rows());
    assert_eq!(t_invariant(&p, &d).unwrap(), t_invariant(&q, &d).unwrap());
    assert_ne!(u_invariant(0, 1, a, b, &p, &d).unwrap(), u_invariant(0, 1, a, b, &q, &d).unwrap());

    let pattern = make_pattern_phrase(PatternKind::P, 2, 0, 1, a, Some(b)).unwrap();
    assert_eq!(u_invariant(0, 1, a, b, &pattern, &d).unwrap().value, 1);
    let bb = Nanophrase::parse("B|B:b", &d).unwrap();
    assert_eq!(u_invariant(0, 1, a, b, &bb, &d).unwrap().value, 0);
}

#[test]
fn v4_values() {
    let d = HomotopyData::gauss();
    assert_eq!(v4(&word("ABACDCBD"), &d).unwrap(), TaggedValue::new(1, 2));
    assert_eq!(v4(&Nanophrase::trivial(1), &d).unwrap(), TaggedValue::new(0, 2));
}

#[test]
fn abacdcbd_is_not_found_trivial() {
    let d = HomotopyData::gauss();
    let bounds = SearchBounds {
        max_rank: 6,
        max_states: 1_000_000,
    };
    let res = bounded_equiv(&word("ABACDCBD"), &Nanophrase::trivial(1), &d, bounds, false).unwrap();
    assert_eq!(res, Equivalence::Unknown);
}

#[test]
fn shift_examples() {
    let d = HomotopyData::parse("alpha: a b\nnu: (a b)").unwrap();
    let p = Nanophrase::parse("ABAC|BC:aaa", &d).unwrap();
    assert_eq!(shift(&p, 0, &d).unwrap().to_text(&d), "BACA|BC:baa");
    assert_eq!(shift(&p, 1, &d).unwrap().to_text(&d), "ABAC|CB:aaa");
    let single = Nanophrase::parse("A|A:a", &d).unwrap();
    assert_eq!(shift(&single, 0, &d).unwrap(), single);
}

#[test]
fn v4_is_not_shift_invariant() {
    let d = HomotopyData::gauss();
    let witness = nanophrase::groups::enumerate_phrases(&d, 1, 5).into_iter().find_map(|cf| {
        let w = cf.to_nanophrase();
        let s = shift(&w, 0, &d).unwrap();
        (v4(&w, &d).unwrap() != v4(&s, &d).unwrap()).then_some(w)
    });
    assert!(witness.is_some());
}

#[test]
fn group_relation_examples() {
    let d = HomotopyData::gauss();
    let pres = generate_relations(&d, 1, 2, false).unwrap();
    let abab = pres.index_of(&word("ABAB").canonical_form()).unwrap();
    assert!(pres.relations().iter().any(|row| row == &vec![(abab, 2)] || row == &vec![(abab, 1)]));

    // degree 3: every rank <= 4 word looks like the trivial word
    let g3 = group_structure(&d, 1, 3, false).unwrap();
    for cf in nanophrase::groups::enumerate_phrases(&d, 1, 4) {
        let c = gamma_coordinates(&cf.to_nanophrase(), &g3, true).unwrap();
        assert!(c.iter().all(TaggedValue::is_zero), "{}", cf.to_text(&d));
    }
    for w in ["ABAB", "ABACBC", "ABCABC", "ABCACB", "ABCBAC", "ABCBCA"] {
        let g = FormalSum::from_phrase(&word(w));
        assert!(g3.coordinates(&g).unwrap().iter().all(TaggedValue::is_zero), "{w}");
    }

    let g4 = group_structure(&d, 1, 4, false).unwrap();
    assert_ne!(
        gamma_coordinates(&word("ABACDCBD"), &g4, true).unwrap(),
        gamma_coordinates(&Nanophrase::trivial(1), &g4, true).unwrap()
    );
}

/// Index of the `V4_WORDS` entry isomorphic to `w`, 1-based.
fn match_w(w: &Nanophrase) -> Option<usize> {
    let cf = w.canonical_form();
    V4_WORDS.iter().position(|x| word(x).canonical_form() == cf).map(|i| i + 1)
}

/// Swaps the adjacent pairs AB, AC and BC of the H3 site.
fn apply_h3(w: &str) -> String {
    let mut s = w.to_string();
    for (from, to) in [("AB", "BA"), ("AC", "CA"), ("BC", "CB")] {
        s = s.replacen(from, to, 1);
    }
    s
}

fn delete(w: &str, c: char) -> Nanophrase {
    word(&w.replace(c, ""))
}

// word, matches after deleting A, B, C, word after H3, matches again
const TABLE_M2: &str = "\
DABDACEBCE - - - DBADCAECBE 1 - 2
DABEACDBCE - - - DBAECADCBE - - -
DABEACEBCD - - - DBAECAECBD - - -
DEABDACEBC - 2 - DEBADCAECB 3 - -
DEABEACDBC 4 - - DEBAECADCB - - 5
DEABDACBCE - - - DEBADCACBE - - -
DEABEACBCD - - - DEBAECACBD - - -
DEABACDBCE - - 6 DEBACADCBE - 6 -
DEABACEBCD - - - DEBACAECBD - - -
DABDEACEBC 1 - 3 DBADECAECB - - -
DABEDACEBC - - - DBAEDCAECB - - -
DABDEACBCE - - - DBADECACBE - - -
DABEDACBCE 3 - - DBAEDCACBE - 3 -
ABDEACDBCE - 3 - BADECADCBE 5 - -
ABDEACEBCD 6 - - BADECAECBD - - 5
DABEACDEBC - 4 - DBAECADECB - - 6
DABEACEDBC - - 5 DBAECAEDCB 6 - -
DABACDEBCE - - - DBACADECBE - - -
DABACEDBCE - - 4 DBACAEDCBE - 4 -
ABDACDEBCE 4 - 2 BADCADECBE - - -
ABDACEDBCE - - - BADCAEDCBE - - -
DABEACBCDE 5 - - DBAECACBDE - 5 -
DABEACBCED - - - DBAECACBED - - -
DABACEBCDE - - - DBACAECBDE - - -
DABACEBCED - - - DBACAECBED - - -
ABDACEBCDE - 1 - BADCAECBDE - - 4
ABDACEBCED - - 3 BADCAECBED 6 - -
DEDABEACBC - - - DEDBAECACB - - -
DEDABACEBC - - 1 DEDBACAECB - 1 -
DEDABACBCE - - - DEDBACACBE - - -
DABEDEACBC 2 - - DBAEDECACB - 2 -
ABDEDACEBC - - 6 BADEDCAECB - 4 -
ABDEDACBCE - - - BADEDCACBE - - -
DABACEDEBC - - - DBACAEDECB - - -
ABDACEDEBC 5 - - BADCAEDECB - 3 -
ABACDEDBCE - - 1 BACADEDCBE - 1 -
DABACBCEDE - - - DBACACBEDE - - -
ABDACBCEDE 2 - - BADCACBEDE - 2 -
ABACDBCEDE - - - BACADCBEDE - - -";

fn parse_match(s: &str) -> Option<usize> {
    (s != "-").then(|| s.parse().unwrap())
}

#[test]
fn h3_table_with_two_letters_of_the_site() {
    let d = HomotopyData::gauss();
    for line in TABLE_M2.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        let (w, after) = (f[0], f[4]);
        assert_eq!(apply_h3(w), after, "{w}");
        // the enumerator sees the same move
        let target = word(after).canonical_form();
        assert!(enumerate_reductions(&word(w), &d)
            .iter()
            .any(|m| m.kind == MoveKind::H3Forward && m.result.canonical_form() == target));
        let mut parity = [0usize; 2];
        for (side, (text, cols)) in [(w, &f[1..4]), (after, &f[5..8])].into_iter().enumerate() {
            for (c, col) in "ABC".chars().zip(cols.iter()) {
                let m = match_w(&delete(text, c));
                assert_eq!(m, parse_match(col), "{text} without {c}");
                parity[side] += m.is_some() as usize;
            }
        }
        assert_eq!(parity[0] % 2, parity[1] % 2, "{w}");
        assert_eq!(v4(&word(w), &d).unwrap(), v4(&word(after), &d).unwrap(), "{w}");
    }
}

#[test]
fn h3_table_with_three_letters_of_the_site() {
    let d = HomotopyData::gauss();
    let rows = [
        ("DABDACBC", None, "DBADCACB", None),
        ("DABACDBC", Some(4), "DBACADCB", Some(6)),
        ("DABACBCD", None, "DBACACBD", None),
        ("ABDACDBC", None, "BADCADCB", None),
        ("ABDACBCD", Some(3), "BADCACBD", Some(5)),
        ("ABACDBCD", None, "BACADCBD", None),
    ];
    for (s, m, s2, m2) in rows {
        assert_eq!(apply_h3(s), s2);
        assert_eq!(match_w(&word(s)), m, "{s}");
        assert_eq!(match_w(&word(s2)), m2, "{s2}");
        let expected = TaggedValue::new(m.is_some() as i64, 2);
        assert_eq!(v4(&word(s), &d).unwrap(), expected);
        assert_eq!(v4(&word(s2), &d).unwrap(), expected);
    }
}
