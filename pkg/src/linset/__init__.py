"""Maximum scattered linear sets of PG(1, q^4): construction, classification, verification."""

from .field_tower import FieldSpec

__all__ = ["FieldSpec"]
