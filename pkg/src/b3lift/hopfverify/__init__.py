"""Coproducts, skew-primitive detection and the verification suite."""
