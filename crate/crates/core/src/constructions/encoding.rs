use crate::bratteli::StationaryOrderedDiagram;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Substitution, Word};

/// A stationary diagram recoded as a substitution on multi-edge letters
/// (a, i), 0 ≤ i < n_a.
#[derive(Debug, Clone)]
pub struct EncodedSystem {
    pub tau: Substitution,
    /// ψ(a) = (a,0) … (a,n_a−1).
    pub psi: Vec<Word>,
    /// Vertex letter of each encoded letter.
    pub vertex: Vec<Letter>,
    /// Power of the read substitution the encoding was built from.
    pub power: usize,
}

impl EncodedSystem {
    /// ψ extended to words.
    pub fn lift(&self, w: &[Letter]) -> Word {
        w.iter().flat_map(|a| self.psi[a.index()].iter().copied()).collect()
    }

    /// Inverse of [`lift`](Self::lift) letterwise: (a, i) ↦ a.
    pub fn project(&self, w: &[Letter]) -> Word {
        w.iter().map(|a| self.vertex[a.index()]).collect()
    }
}

/// Least power k with |σᵏ(a)| ≥ n_a for all a, where σ is the read rule.
pub fn encoding_power(d: &StationaryOrderedDiagram, max_power: usize) -> Option<usize> {
    let s = d.read_substitution();
    (1..=max_power).find(|&k| {
        let lens = s.lengths(k);
        d.top_counts().iter().zip(&lens).all(|(&n, &l)| l >= n as u64)
    })
}

/// Encoding of the read rule σ: τ(a, i) = ψ(σ(a)ᵢ) for i < n_a − 1, and
/// τ(a, n_a − 1) = ψ of the rest of σ(a).
pub fn multi_edge_encoding(d: &StationaryOrderedDiagram) -> Result<EncodedSystem> {
    multi_edge_encoding_power(d, 1)
}

/// Same as [`multi_edge_encoding`] on the diagram read with σᵏ.
pub fn multi_edge_encoding_power(d: &StationaryOrderedDiagram, k: usize) -> Result<EncodedSystem> {
    let sigma = d.read_substitution().power(k);
    let counts = d.top_counts();
    let alphabet = d.alphabet();
    let mut labels = Vec::new();
    let mut vertex = Vec::new();
    let mut psi = Vec::new();
    for a in alphabet.letters() {
        let n = counts[a.index()];
        let image_len = sigma.image(a).len();
        if n > image_len {
            return Err(Error::CountExceedsImage {
                letter: alphabet.label(a).to_string(),
                count: n,
                image_len,
            });
        }
        let mut block = Vec::with_capacity(n);
        for i in 0..n {
            block.push(Letter(labels.len() as u16));
            labels.push(format!("({},{})", alphabet.label(a), i));
            vertex.push(a);
        }
        psi.push(block);
    }
    let mut images = Vec::with_capacity(labels.len());
    for a in alphabet.letters() {
        let img = sigma.image(a);
        let n = counts[a.index()];
        for i in 0..n {
            let part = if i + 1 < n { &img[i..i + 1] } else { &img[i..] };
            images.push(part.iter().flat_map(|b| psi[b.index()].iter().copied()).collect());
        }
    }
    let tau = Substitution::new(Alphabet::new(labels)?, images)?;
    let enc = EncodedSystem { tau, psi, vertex, power: k };
    for a in alphabet.letters() {
        if enc.tau.apply(&enc.psi[a.index()]) != enc.lift(sigma.image(a)) {
            return Err(Error::InvalidArgument(format!("τ∘ψ ≠ ψ∘σ at `{}`", alphabet.label(a))));
        }
    }
    Ok(enc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bratteli::stationary_from_substitution;

    fn derivative_diagram() -> StationaryOrderedDiagram {
        let alphabet = Alphabet::new(["v1", "v2", "v3", "v4"]).unwrap();
        let w = |t: &str| alphabet.parse_word(t).unwrap();
        let images = vec![w("v1 v2"), w("v1 v3 v2"), w("v1 v3 v3 v2"), w("v1 v2 v4 v4 v1 v2")];
        let s = Substitution::new(alphabet, images).unwrap();
        stationary_from_substitution(&s, &[1, 3, 5, 4])
    }

    #[test]
    fn count_exceeding_image_is_rejected() {
        let d = derivative_diagram();
        assert!(matches!(
            multi_edge_encoding(&d),
            Err(Error::CountExceedsImage { count: 5, image_len: 4, .. })
        ));
        assert_eq!(encoding_power(&d, 4), Some(2));
    }

    #[test]
    fn projection_intertwines() {
        let d = derivative_diagram();
        let e = multi_edge_encoding_power(&d, 2).unwrap();
        let sigma = d.read_substitution().power(2);
        assert_eq!(e.tau.len(), 13);
        for a in d.alphabet().letters() {
            for n in 1..=3 {
                assert_eq!(e.tau.expand(&e.psi[a.index()], n), e.lift(&sigma.expand(&[a], n)));
            }
        }
    }

    #[test]
    fn odometer_encoding() {
        let s: Substitution = "a -> aa".parse().unwrap();
        let d = stationary_from_substitution(&s, &[2]);
        let e = multi_edge_encoding(&d).unwrap();
        assert_eq!(e.tau.to_string(), "(a,0) -> (a,0) (a,1)\n(a,1) -> (a,0) (a,1)\n");
    }
}
