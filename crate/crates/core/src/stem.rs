//! Porter stemming.
//!
//! This is a byte-level port of Martin Porter's reference C implementation,
//! including its documented departures from the 1980 paper: `bli -> ble`
//! rather than `abli -> able` in step 2, the extra `logi -> log` rule, and
//! words of length <= 2 being returned unchanged. Those departures are what
//! the published test vocabulary expects, so they are load-bearing here.
//!
//! Input handling is deliberately forgiving: words are lowercased first, and
//! anything that is not pure ASCII after lowercasing is returned as-is.

/// Stems a single word.
///
/// The word is lowercased, then run through the Porter algorithm if it is
/// ASCII and longer than two characters. Non-ASCII words are returned
/// lowercased but otherwise untouched.
pub fn stem_word(word: &str) -> String {
    let lower = if word
        .chars()
        .all(|c| c.is_ascii_lowercase() || !c.is_ascii_alphabetic())
    {
        word.to_string()
    } else {
        word.to_lowercase()
    };
    if !lower.is_ascii() || lower.len() <= 2 {
        return lower;
    }
    let mut s = Stemmer {
        b: lower.into_bytes(),
        j: 0,
    };
    s.run();
    String::from_utf8(s.b).expect("stemmer operates on ASCII bytes")
}

/// Stems every word of a multi-word phrase, preserving word order.
///
/// The phrase is lowercased and split on whitespace; hyphenated words are
/// stemmed per segment with the hyphens kept in place, so
/// `"Event-Related Potential"` becomes `"event-relat potenti"`. Words are
/// re-joined with single spaces.
pub fn stem_phrase(phrase: &str) -> String {
    phrase
        .split_whitespace()
        .map(|word| {
            if word.contains('-') {
                word.split('-').map(stem_word).collect::<Vec<_>>().join("-")
            } else {
                stem_word(word)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Working state: `b` is the live word, `j` the length of the stem matched
/// by the most recent successful `ends` call.
struct Stemmer {
    b: Vec<u8>,
    j: usize,
}

impl Stemmer {
    fn run(&mut self) {
        self.step1ab();
        self.step1c();
        self.step2();
        self.step3();
        self.step4();
        self.step5();
    }

    fn len(&self) -> usize {
        self.b.len()
    }

    /// True if the byte at `i` acts as a consonant. `y` is a consonant at
    /// the start of the word or after a vowel.
    fn cons(&self, i: usize) -> bool {
        match self.b[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !self.cons(i - 1),
            _ => true,
        }
    }

    /// The measure of the stem `b[..j]`: the number of vowel-consonant
    /// sequences it contains.
    fn m(&self) -> usize {
        let j = self.j;
        let mut n = 0;
        let mut i = 0;
        loop {
            if i >= j {
                return n;
            }
            if !self.cons(i) {
                break;
            }
            i += 1;
        }
        i += 1;
        loop {
            loop {
                if i >= j {
                    return n;
                }
                if self.cons(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
            n += 1;
            loop {
                if i >= j {
                    return n;
                }
                if !self.cons(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
        }
    }

    fn vowel_in_stem(&self) -> bool {
        (0..self.j).any(|i| !self.cons(i))
    }

    /// True if the word ends in a double consonant.
    fn double_cons_end(&self) -> bool {
        let k = self.len();
        k >= 2 && self.b[k - 1] == self.b[k - 2] && self.cons(k - 1)
    }

    /// consonant-vowel-consonant ending at index `i`, where the final
    /// consonant is not `w`, `x` or `y`. Used to spot stems like `hop`
    /// that need a restored `e`.
    fn cvc(&self, i: usize) -> bool {
        if i < 2 || !self.cons(i) || self.cons(i - 1) || !self.cons(i - 2) {
            return false;
        }
        !matches!(self.b[i], b'w' | b'x' | b'y')
    }

    /// Does the word end with `s`? On success, records the stem length in
    /// `self.j`.
    fn ends(&mut self, s: &[u8]) -> bool {
        let k = self.len();
        if s.len() > k || &self.b[k - s.len()..] != s {
            return false;
        }
        self.j = k - s.len();
        true
    }

    /// Replaces the matched suffix (everything past `j`) with `s`.
    fn set_to(&mut self, s: &[u8]) {
        self.b.truncate(self.j);
        self.b.extend_from_slice(s);
    }

    /// `set_to`, but only when the stem has positive measure.
    fn r(&mut self, s: &[u8]) {
        if self.m() > 0 {
            self.set_to(s);
        }
    }

    fn chop(&mut self, n: usize) {
        let k = self.len();
        self.b.truncate(k - n);
    }

    /// Plural and past-participle endings: `caresses -> caress`,
    /// `ponies -> poni`, `hopping -> hop`, `agreed -> agree`.
    fn step1ab(&mut self) {
        if self.b[self.len() - 1] == b's' {
            if self.ends(b"sses") {
                self.chop(2);
            } else if self.ends(b"ies") {
                self.set_to(b"i");
            } else if self.len() >= 2 && self.b[self.len() - 2] != b's' {
                self.chop(1);
            }
        }
        if self.ends(b"eed") {
            if self.m() > 0 {
                self.chop(1);
            }
        } else if (self.ends(b"ed") || self.ends(b"ing")) && self.vowel_in_stem() {
            self.b.truncate(self.j);
            if self.ends(b"at") {
                self.set_to(b"ate");
            } else if self.ends(b"bl") {
                self.set_to(b"ble");
            } else if self.ends(b"iz") {
                self.set_to(b"ize");
            } else if self.double_cons_end() {
                if !matches!(self.b[self.len() - 1], b'l' | b's' | b'z') {
                    self.chop(1);
                }
            } else {
                self.j = self.len();
                if self.m() == 1 && self.cvc(self.len() - 1) {
                    self.set_to(b"e");
                }
            }
        }
    }

    /// Turns terminal `y` to `i` when there is a vowel in the stem.
    fn step1c(&mut self) {
        if self.ends(b"y") && self.vowel_in_stem() {
            let k = self.len();
            self.b[k - 1] = b'i';
        }
    }

    /// Maps double suffixes to single ones: `-ization -> -ize`,
    /// `-ational -> -ate`, and so on. Keyed on the penultimate letter.
    #[allow(clippy::collapsible_match, clippy::if_same_then_else)]
    fn step2(&mut self) {
        if self.len() < 3 {
            return;
        }
        match self.b[self.len() - 2] {
            b'a' => {
                if self.ends(b"ational") {
                    self.r(b"ate");
                } else if self.ends(b"tional") {
                    self.r(b"tion");
                }
            }
            b'c' => {
                if self.ends(b"enci") {
                    self.r(b"ence");
                } else if self.ends(b"anci") {
                    self.r(b"ance");
                }
            }
            b'e' => {
                if self.ends(b"izer") {
                    self.r(b"ize");
                }
            }
            b'l' => {
                if self.ends(b"bli") {
                    self.r(b"ble");
                } else if self.ends(b"alli") {
                    self.r(b"al");
                } else if self.ends(b"entli") {
                    self.r(b"ent");
                } else if self.ends(b"eli") {
                    self.r(b"e");
                } else if self.ends(b"ousli") {
                    self.r(b"ous");
                }
            }
            b'o' => {
                if self.ends(b"ization") {
                    self.r(b"ize");
                } else if self.ends(b"ation") {
                    self.r(b"ate");
                } else if self.ends(b"ator") {
                    self.r(b"ate");
                }
            }
            b's' => {
                if self.ends(b"alism") {
                    self.r(b"al");
                } else if self.ends(b"iveness") {
                    self.r(b"ive");
                } else if self.ends(b"fulness") {
                    self.r(b"ful");
                } else if self.ends(b"ousness") {
                    self.r(b"ous");
                }
            }
            b't' => {
                if self.ends(b"aliti") {
                    self.r(b"al");
                } else if self.ends(b"iviti") {
                    self.r(b"ive");
                } else if self.ends(b"biliti") {
                    self.r(b"ble");
                }
            }
            b'g' => {
                if self.ends(b"logi") {
                    self.r(b"log");
                }
            }
            _ => {}
        }
    }

    /// `-icate -> -ic`, `-ful` and `-ness` removal, and similar.
    #[allow(clippy::collapsible_match)]
    fn step3(&mut self) {
        if self.len() < 3 {
            return;
        }
        match self.b[self.len() - 1] {
            b'e' => {
                if self.ends(b"icate") {
                    self.r(b"ic");
                } else if self.ends(b"ative") {
                    self.r(b"");
                } else if self.ends(b"alize") {
                    self.r(b"al");
                }
            }
            b'i' => {
                if self.ends(b"iciti") {
                    self.r(b"ic");
                }
            }
            b'l' => {
                if self.ends(b"ical") {
                    self.r(b"ic");
                } else if self.ends(b"ful") {
                    self.r(b"");
                }
            }
            b's' => {
                if self.ends(b"ness") {
                    self.r(b"");
                }
            }
            _ => {}
        }
    }

    /// Drops the classical latinate suffixes (`-ance`, `-ement`, `-ion`
    /// after `s`/`t`, ...) when the stem measure exceeds one.
    fn step4(&mut self) {
        if self.len() < 3 {
            return;
        }
        let matched = match self.b[self.len() - 2] {
            b'a' => self.ends(b"al"),
            b'c' => self.ends(b"ance") || self.ends(b"ence"),
            b'e' => self.ends(b"er"),
            b'i' => self.ends(b"ic"),
            b'l' => self.ends(b"able") || self.ends(b"ible"),
            b'n' => {
                self.ends(b"ant") || self.ends(b"ement") || self.ends(b"ment") || self.ends(b"ent")
            }
            b'o' => {
                (self.ends(b"ion") && self.j >= 1 && matches!(self.b[self.j - 1], b's' | b't'))
                    || self.ends(b"ou")
            }
            b's' => self.ends(b"ism"),
            b't' => self.ends(b"ate") || self.ends(b"iti"),
            b'u' => self.ends(b"ous"),
            b'v' => self.ends(b"ive"),
            b'z' => self.ends(b"ize"),
            _ => false,
        };
        if matched && self.m() > 1 {
            self.b.truncate(self.j);
        }
    }

    /// Removes a final `e` and collapses a final double `l` on long stems.
    fn step5(&mut self) {
        self.j = self.len();
        if self.b[self.len() - 1] == b'e' {
            let a = self.m();
            if a > 1 || (a == 1 && !self.cvc(self.len() - 2)) {
                self.chop(1);
            }
        }
        self.j = self.len();
        if self.b[self.len() - 1] == b'l' && self.double_cons_end() && self.m() > 1 {
            self.chop(1);
        }
    }
}
