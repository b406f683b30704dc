"""Mutual clustering of comparative text collections over heterogeneous information networks."""


def main() -> None:
    from mutual_hint.cli import run

    raise SystemExit(run())
