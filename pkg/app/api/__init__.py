"""Read-only JSON API over the grammar engine."""
