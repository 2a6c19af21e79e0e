"""Hat guessing games on graphs."""
