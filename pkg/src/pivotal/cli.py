"""Command-line front end.

Exit codes: 0 for a true verdict (or a clean run), 1 for a false verdict (or
failures), 2 for errors, including refusals on unmet structure assumptions.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

import click

from pivotal import characterize
from pivotal.consequence import (
    PertinenceRelation,
    PivotalRelation,
    consequence_set,
    entails_basic,
    h_sets,
    read_pivot,
)
from pivotal.formula import FormulaSyntaxError, parse, parse_list, read_formula_file
from pivotal.semantics import (
    DEFAULT_CLONE_CAP,
    DEFAULT_UNIVERSE_CAP,
    KINDS,
    CapExceeded,
    IncompleteClone,
    Structure,
    UnknownAtom,
    check_assumptions,
    compute_clone,
    mod,
)

MODES = ("basic", "pivotal", "discriminative", "xlogic")
MODE_ALIASES = {"plain": "pivotal"}


@dataclass
class RunConfig:
    structure: str = "classical"
    atoms: tuple[str, ...] = ("p",)
    universe_cap: int = DEFAULT_UNIVERSE_CAP
    clone_cap: int = DEFAULT_CLONE_CAP
    enum_cap: int = int(os.environ.get("PIVOTAL_ENUM_CAP", characterize.DEFAULT_ENUM_CAP))
    samples: int = int(os.environ.get("PIVOTAL_SAMPLES", characterize.DEFAULT_SAMPLES))
    seed: int = 0
    pivot: str | None = None
    pertinence: str | None = None
    close: bool = False
    mode: str = "basic"
    format: str = "text"

    def __post_init__(self):
        if self.structure not in KINDS:
            raise ValueError(f"structure must be one of {KINDS}")
        self.atoms = tuple(self.atoms)
        self.mode = MODE_ALIASES.get(self.mode, self.mode)
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        for name in ("universe_cap", "clone_cap", "enum_cap", "samples"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.format not in ("text", "json"):
            raise ValueError("format must be text or json")

    def build_structure(self) -> Structure:
        return Structure(self.structure, self.atoms, self.universe_cap)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        """JSON object, or ``key = value`` lines; file paths resolve against the config's folder."""
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        try:
            raw = json.loads(text)
        except json.JSONDecodeError:
            raw = {}
            for line in text.splitlines():
                line = line.split("#", 1)[0].strip()
                if line:
                    key, sep, value = line.partition("=")
                    if not sep:
                        raise ValueError(f"{path}: expected key = value, got {line!r}")
                    raw[key.strip()] = value.strip()
        return cls.from_mapping(raw, base=path.parent)

    @classmethod
    def from_mapping(cls, raw: dict[str, Any], base: Path | None = None) -> "RunConfig":
        known = {f for f in cls.__dataclass_fields__}
        raw = {k.replace("-", "_"): v for k, v in raw.items()}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if isinstance(raw.get("atoms"), str):
            raw["atoms"] = _split_atoms(raw["atoms"])
        for key in ("universe_cap", "clone_cap", "enum_cap", "samples", "seed"):
            if key in raw:
                raw[key] = int(raw[key])
        if isinstance(raw.get("close"), str):
            raw["close"] = raw["close"].lower() in ("1", "true", "yes")
        for key in ("pivot", "pertinence"):
            if raw.get(key) and base is not None:
                raw[key] = str(base / raw[key])
        return cls(**raw)


def _split_atoms(text: str) -> tuple[str, ...]:
    return tuple(a.strip() for a in text.split(",") if a.strip())


def _fail(msg: str):
    raise ValueError(msg)


def _common(f):
    opts = [
        click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                     help="JSON or key=value file with defaults for every option."),
        click.option("--structure", type=click.Choice(KINDS), help="Semantic structure."),
        click.option("--atoms", help="Comma-separated atom list, in enumeration order."),
        click.option("--format", "fmt", type=click.Choice(["text", "json"]), help="Output format."),
        click.option("--universe-cap", type=int, help="Largest universe to materialize."),
        click.option("--clone-cap", type=int, help="Largest clone to compute."),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


def _config(config_path, **overrides) -> RunConfig:
    try:
        cfg = RunConfig.load(config_path) if config_path else RunConfig()
        changes = {k: v for k, v in overrides.items() if v is not None}
        if "atoms" in changes:
            changes["atoms"] = _split_atoms(changes["atoms"])
        if "fmt" in changes:
            changes["format"] = changes.pop("fmt")
        return replace(cfg, **changes)
    except (ValueError, OSError) as e:
        _fail(str(e))


def _gamma(gamma: str | None, gamma_file: str | None):
    if gamma_file:
        return read_formula_file(gamma_file)
    return parse_list(gamma or "")


def _emit(cfg: RunConfig, payload: dict, text: str):
    if cfg.format == "json":
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(text)


class _Main(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (FormulaSyntaxError, UnknownAtom, CapExceeded, IncompleteClone,
                characterize.AssumptionNotMet, ValueError, OSError) as e:
            msg = f"unknown atom {e.args[0]!r}" if isinstance(e, UnknownAtom) else str(e)
            click.echo(f"error: {msg}", err=True)
            ctx.exit(2)


@click.group(cls=_Main)
def main():
    """Pivotal and pivotal-discriminative consequence over classical, FOUR and J3 semantics."""


@main.command("parse")
@click.argument("formula")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def parse_cmd(formula: str, fmt: str):
    """Parse FORMULA and print it back with minimal parentheses."""
    f = parse(formula)
    if fmt == "json":
        click.echo(json.dumps({"text": str(f), "ast": repr(f)}))
    else:
        click.echo(str(f))


@main.command()
@_common
@click.option("--gamma", default=None, help="Comma-separated premises.")
@click.option("--gamma-file", type=click.Path(exists=True, dir_okay=False), help="Premises, one per line.")
def models(config_path, structure, atoms, fmt, universe_cap, clone_cap, gamma, gamma_file):
    """List the models of the premises in canonical order."""
    cfg = _config(config_path, structure=structure, atoms=atoms, fmt=fmt,
                  universe_cap=universe_cap, clone_cap=clone_cap)
    s = cfg.build_structure()
    V = mod(s, _gamma(gamma, gamma_file))
    lines = [str(v) for v in V]
    if cfg.format == "json":
        _emit(cfg, {"structure": s.describe(), "models": lines}, "")
    elif lines:
        click.echo("\n".join(lines))
    else:
        click.echo("(no models)", err=True)


def _relation(cfg: RunConfig, s: Structure):
    if cfg.mode in ("pivotal", "discriminative"):
        if not cfg.pivot:
            _fail(f"mode {cfg.mode} needs --pivot")
        mode = "plain" if cfg.mode == "pivotal" else "discriminative"
        return PivotalRelation(s, read_pivot(s, cfg.pivot), mode)
    if cfg.mode == "xlogic":
        if not cfg.pertinence:
            _fail("mode xlogic needs --pertinence")
        clone = compute_clone(s, cfg.clone_cap)
        return PertinenceRelation.of(clone, read_formula_file(cfg.pertinence), close=cfg.close)
    return None


def _decide(s: Structure, rel, gamma, alpha) -> bool:
    if rel is None:
        return entails_basic(s, gamma, alpha)
    if isinstance(rel, PertinenceRelation):
        return rel.entails_mask(mod(s, gamma).mask, rel.clone.class_of(alpha))
    return rel.entails(gamma, alpha)


def _parse_batch_line(line: str, base: Path):
    body, _, comment = line.partition("#")
    expect = None
    comment = comment.strip()
    if comment.startswith("expect:"):
        word = comment[len("expect:"):].strip().lower()
        if word not in ("true", "false"):
            raise ValueError(f"bad expectation {word!r}")
        expect = word == "true"
    body = body.strip()
    if not body:
        return None
    gamma_file, sep, alpha = body.partition("::")
    if not sep:
        raise ValueError(f"batch line must be 'gamma_file :: alpha', got {body!r}")
    return (base / gamma_file.strip()), parse(alpha.strip()), expect


@main.command()
@_common
@click.option("--mode", type=click.Choice(MODES + tuple(MODE_ALIASES)), help="Consequence relation.")
@click.option("--pivot", type=click.Path(exists=True, dir_okay=False), help="Pivot file.")
@click.option("--pertinence", type=click.Path(exists=True, dir_okay=False),
              help="Pertinent formulas for xlogic mode, one per line.")
@click.option("--close", is_flag=True, default=None, help="Close the pertinent set under Th(Mod(.)).")
@click.option("--gamma", default=None, help="Comma-separated premises.")
@click.option("--gamma-file", type=click.Path(exists=True, dir_okay=False), help="Premises, one per line.")
@click.option("--alpha", help="Candidate conclusion.")
@click.option("--batch", type=click.Path(exists=True, dir_okay=False),
              help="Lines 'gamma_file :: alpha', optionally followed by '# expect: true|false'.")
def entail(config_path, structure, atoms, fmt, universe_cap, clone_cap, mode, pivot, pertinence, close,
           gamma, gamma_file, alpha, batch):
    """Decide whether the premises entail ALPHA."""
    cfg = _config(config_path, structure=structure, atoms=atoms, fmt=fmt, universe_cap=universe_cap,
                  clone_cap=clone_cap, mode=mode, pivot=pivot, pertinence=pertinence, close=close)
    s = cfg.build_structure()
    rel = _relation(cfg, s)
    if batch:
        _run_batch(cfg, s, rel, Path(batch))
        return
    if alpha is None:
        _fail("give --alpha or --batch")
    g = _gamma(gamma, gamma_file)
    verdict = _decide(s, rel, g, parse(alpha))
    _emit(cfg, {"mode": cfg.mode, "gamma": [str(f) for f in g], "alpha": str(parse(alpha)),
                "verdict": verdict}, "true" if verdict else "false")
    sys.exit(0 if verdict else 1)


def _run_batch(cfg: RunConfig, s: Structure, rel, path: Path):
    rows, ok = [], True
    for n, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        try:
            item = _parse_batch_line(line, path.parent)
        except (ValueError, FormulaSyntaxError) as e:
            _fail(f"{path}:{n}: {e}")
        if item is None:
            continue
        gfile, alpha, expect = item
        verdict = _decide(s, rel, read_formula_file(gfile), alpha)
        matched = expect is None or verdict == expect
        ok &= matched
        rows.append({"line": n, "gamma_file": str(gfile.relative_to(path.parent)), "alpha": str(alpha),
                     "verdict": verdict, "expected": expect, "matched": matched})
    text = "\n".join(
        f"{r['gamma_file']} :: {r['alpha']}  {str(r['verdict']).lower()}"
        + ("" if r["matched"] else f"  (expected {str(r['expected']).lower()})")
        for r in rows
    )
    _emit(cfg, {"mode": cfg.mode, "queries": rows, "all_matched": ok}, text)
    sys.exit(0 if ok else 1)


@main.command()
@_common
@click.option("--mode", type=click.Choice(MODES[:3] + tuple(MODE_ALIASES)), help="Consequence relation.")
@click.option("--pivot", type=click.Path(exists=True, dir_okay=False), help="Pivot file.")
@click.option("--gamma", default=None, help="Comma-separated premises.")
@click.option("--gamma-file", type=click.Path(exists=True, dir_okay=False), help="Premises, one per line.")
@click.option("--h-sets", "show_h", is_flag=True, help="Also list the H stages.")
def theory(config_path, structure, atoms, fmt, universe_cap, clone_cap, mode, pivot, gamma, gamma_file, show_h):
    """List one witness per formula class concluded from the premises."""
    cfg = _config(config_path, structure=structure, atoms=atoms, fmt=fmt, universe_cap=universe_cap,
                  clone_cap=clone_cap, mode=mode, pivot=pivot)
    s = cfg.build_structure()
    clone = compute_clone(s, cfg.clone_cap)
    clone.require_complete()
    g = _gamma(gamma, gamma_file)
    rel = _relation(cfg, s) or PivotalRelation(s, s.full, "plain")
    conclusions = consequence_set(rel, g, clone)
    payload = {"mode": cfg.mode, "classes": len(clone), "concluded": [str(f) for f in conclusions.witnesses()]}
    lines = payload["concluded"][:]
    if show_h:
        hs = h_sets(rel, g, clone)
        payload["h_stages"] = [[str(f) for f in st.witnesses()] for st in hs.stages]
        for i, st in enumerate(payload["h_stages"], 1):
            lines.append(f"# H{i}: " + ", ".join(st))
    _emit(cfg, payload, "\n".join(lines))


@main.command("check-assumptions")
@_common
def check_assumptions_cmd(config_path, structure, atoms, fmt, universe_cap, clone_cap):
    """Decide (A0)-(A4) for the structure."""
    cfg = _config(config_path, structure=structure, atoms=atoms, fmt=fmt,
                  universe_cap=universe_cap, clone_cap=clone_cap)
    s = cfg.build_structure()
    results = check_assumptions(s, compute_clone(s, cfg.clone_cap))
    lines = []
    for r in results.values():
        line = f"({r.name}) {'holds' if r.holds else 'fails'}"
        if r.counterexample:
            line += "  " + json.dumps(r.counterexample)
        lines.append(line)
    _emit(cfg, {"structure": s.describe(), "assumptions": [r.to_json() for r in results.values()]},
          "\n".join(lines))


@main.command("clone-info")
@_common
@click.option("--list", "show", is_flag=True, help="List one witness per class.")
def clone_info(config_path, structure, atoms, fmt, universe_cap, clone_cap, show):
    """Size of the formula-class quotient and of the definable family."""
    cfg = _config(config_path, structure=structure, atoms=atoms, fmt=fmt,
                  universe_cap=universe_cap, clone_cap=clone_cap)
    s = cfg.build_structure()
    clone = compute_clone(s, cfg.clone_cap)
    info = clone.info()
    if clone.complete:
        info["definable_sets"] = len(clone.definable)
    if show:
        info["witnesses"] = [str(c.witness) for c in clone.classes]
    lines = [f"{k}: {v}" for k, v in info.items() if k != "witnesses"] + info.get("witnesses", [])
    _emit(cfg, info, "\n".join(lines))


@main.command()
@_common
@click.argument("proposition", type=click.Choice(characterize.ALL_PROPOSITIONS))
@click.option("--part", "parts", type=int, multiple=True, help="Restrict to these parts.")
@click.option("--seed", type=int, help="Seed for sampled candidate tables.")
@click.option("--samples", type=int, help="Random tables drawn when sampling.")
@click.option("--enum-cap", type=int, help="Enumerate the relation space up to this many tables.")
@click.option("--report", type=click.Path(dir_okay=False), help="Write the JSON report here.")
@click.option("--omit-runtime", is_flag=True, help="Write null for runtime_ms, for reproducible reports.")
def verify(config_path, structure, atoms, fmt, universe_cap, clone_cap, proposition, parts, seed, samples,
           enum_cap, report, omit_runtime):
    """Verify a representation result by enumeration."""
    cfg = _config(config_path, structure=structure, atoms=atoms, fmt=fmt, universe_cap=universe_cap,
                  clone_cap=clone_cap, seed=seed, samples=samples, enum_cap=enum_cap)
    timing = not omit_runtime
    if proposition == "mupp":
        s = cfg.build_structure() if structure or config_path else None
        r = characterize.verify("mupp", s, seed=cfg.seed, timing=timing)
    elif proposition == "xlogic":
        r = characterize.verify("xlogic", cfg.build_structure(), clone_cap=cfg.clone_cap,
                                seed=cfg.seed, timing=timing)
    else:
        r = characterize.verify(proposition, cfg.build_structure(), parts=list(parts) or None,
                                clone_cap=cfg.clone_cap, enum_cap=cfg.enum_cap, samples=cfg.samples,
                                seed=cfg.seed, timing=timing)
    blob = json.dumps(r.to_json(), indent=2) + "\n"
    if report:
        Path(report).write_text(blob, encoding="utf-8")
    if cfg.format == "json":
        click.echo(blob, nl=False)
    else:
        click.echo(r.summary())
        for note in r.notes[1:]:
            click.echo(f"note: {note}")
    sys.exit(0 if r.ok else 1)


if __name__ == "__main__":
    main()
