"""Shared default constants."""

# default PRNG seed for every stochastic entry point; the CLI lets the
# PWQUANT_SEED environment variable or --seed override it
DEFAULT_SEED = 20260815
