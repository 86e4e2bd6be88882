"""Domain services: one sub-package per area."""
