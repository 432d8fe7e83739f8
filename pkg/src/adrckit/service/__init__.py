"""HTTP service layer: pydantic wire models and request handlers."""
