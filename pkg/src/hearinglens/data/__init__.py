"""Shipped default phrase lists (cue phrases, stop verbs)."""
