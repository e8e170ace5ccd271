"""Domain package containing shared models, errors, types and settings."""
