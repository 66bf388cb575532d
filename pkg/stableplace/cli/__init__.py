from stableplace.cli import annotate, bench, place, synth_view

SUBCOMMANDS = (annotate, place, synth_view, bench)

__all__ = ["SUBCOMMANDS"]
