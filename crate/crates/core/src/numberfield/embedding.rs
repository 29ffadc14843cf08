use super::field::{NfElement, NumberField};
use super::NumberFieldError;

/// A field homomorphism `source → target` fixed by the image of the source
/// generator.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    pub source: NumberField,
    pub target: NumberField,
    pub generator_image: NfElement,
}

impl FieldEmbedding {
    /// Checks that the image is a root of the source defining polynomial.
    pub fn new(
        source: NumberField,
        target: NumberField,
        generator_image: NfElement,
    ) -> Result<Self, NumberFieldError> {
        if generator_image.coords.len() != target.degree() {
            return Err(NumberFieldError::DimensionMismatch {
                expected: target.degree(),
                got: generator_image.coords.len(),
            });
        }
        if !target.degree().is_multiple_of(source.degree()) {
            return Err(NumberFieldError::NotARoot(format!(
                "degree {} does not divide {}",
                source.degree(),
                target.degree()
            )));
        }
        let v = target.eval_poly(source.poly(), &generator_image);
        if !v.is_zero() {
            return Err(NumberFieldError::NotARoot(format!(
                "image {generator_image} does not satisfy {}",
                source.poly()
            )));
        }
        Ok(FieldEmbedding { source, target, generator_image })
    }

    /// The canonical embedding of ℚ = ℚ[x]/(x) into `target`.
    pub fn rational(source: NumberField, target: NumberField) -> Result<Self, NumberFieldError> {
        if source.degree() != 1 {
            return Err(NumberFieldError::NotARoot("source is not of degree one".into()));
        }
        let image = target.from_rational(-source.poly().coeff(0));
        Self::new(source, target, image)
    }

    pub fn apply(&self, x: &NfElement) -> NfElement {
        self.target.substitute(x, &self.generator_image)
    }

    /// Composite `self` then `next`.
    pub fn then(&self, next: &FieldEmbedding) -> Result<FieldEmbedding, NumberFieldError> {
        FieldEmbedding::new(self.source.clone(), next.target.clone(), next.apply(&self.generator_image))
    }
}
