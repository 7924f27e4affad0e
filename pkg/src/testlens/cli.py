"""Command-line entry point wiring all analyses together.

Exit codes: 0 success (no lint findings), 1 lint diagnostics present,
2 usage, I/O, or parse errors. Data goes to stdout, diagnostics and
errors to stderr. Output ordering is fully deterministic.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import extraction, lint as lint_mod, patterns, rename as rename_mod, renamedetect, report
from .config import Config, ConfigError, load_config
from .splitter import split
from .tagger import Lexicon, tag

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_ERROR = 2


class CliError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="testlens",
        description="Analyze unit-test method names: split, tag, match "
                    "grammar patterns, lint name/body consistency, and "
                    "classify renames.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_split = sub.add_parser("split", help="split an identifier into terms")
    p_split.add_argument("name")
    p_split.add_argument("--json", action="store_true", help="emit terms with spans")

    p_tag = sub.add_parser("tag", help="POS-tag an identifier")
    p_tag.add_argument("name")
    p_tag.add_argument("--lexicon", help="override lexicon JSON file")

    p_pattern = sub.add_parser("pattern", help="grammar pattern of an identifier")
    p_pattern.add_argument("name")
    p_pattern.add_argument("--prefix", type=int, metavar="K", help="emit the K-prefix instead")
    p_pattern.add_argument("--catalog", action="store_true",
                           help="also list matching naming templates")

    p_scan = sub.add_parser("scan", help="scan files for test methods")
    p_scan.add_argument("target", help="file or directory")

    p_lint = sub.add_parser("lint", help="lint test names against bodies")
    p_lint.add_argument("target", help="file or directory")
    p_lint.add_argument("--rules", help="comma-separated rule ids (default: all)")
    p_lint.add_argument("--format", choices=("text", "json"), default=None)

    p_rename = sub.add_parser("rename", help="rename detection and classification")
    rename_sub = p_rename.add_subparsers(dest="rename_command", required=True)

    p_detect = rename_sub.add_parser("detect", help="detect renames between two versions")
    p_detect.add_argument("--before", required=True)
    p_detect.add_argument("--after", required=True)
    p_detect.add_argument("--threshold", type=float, default=None)

    p_classify = rename_sub.add_parser("classify", help="classify rename events")
    p_classify.add_argument("--input", required=True,
                            help="CSV (old_name,new_name,file,commit) or JSON array")
    p_classify.add_argument("--format", choices=("json", "csv", "md"), default=None)

    p_report = sub.add_parser("report", help="aggregate classified renames into tables")
    p_report.add_argument("--input", required=True, help="classified JSON file")
    p_report.add_argument("--table", choices=report.TABLE_KINDS, default="full")
    p_report.add_argument("--k", type=int, default=5)
    p_report.add_argument("--prefix-len", default="2..5",
                          help="prefix lengths, e.g. 3 or 2..5")
    p_report.add_argument("--format", choices=report.FORMATS, default=None)

    return parser


def _load_lexicon(config: Config, override: str | None = None) -> Lexicon:
    path = override or config.lexicon
    return Lexicon.from_file(path) if path else Lexicon.default()


def _load_catalog(config: Config):
    return patterns.load_catalog(config.catalog) if config.catalog else patterns.default_catalog()


def _iter_java_files(target: str) -> list[str]:
    if os.path.isfile(target):
        return [target]
    if not os.path.isdir(target):
        raise CliError(f"no such file or directory: {target}")
    found = []
    for root, dirs, files in os.walk(target):
        dirs.sort()
        for name in sorted(files):
            if name.endswith(".java"):
                found.append(os.path.join(root, name))
    return sorted(found)


def _read_source(path: str) -> extraction.SourceFile:
    try:
        with open(path, encoding="utf-8") as fh:
            return extraction.SourceFile(path=path, text=fh.read())
    except (OSError, UnicodeDecodeError) as err:
        raise CliError(f"cannot read {path}: {err}") from err


def _cmd_split(args, config: Config, out, err) -> int:
    seq = split(args.name)
    if args.json:
        doc = [
            {"surface": t.surface, "start": t.start, "end": t.end}
            for t in seq.terms
        ]
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        for term in seq.terms:
            out.write(term.surface + "\n")
    return EXIT_OK


def _cmd_tag(args, config: Config, out, err) -> int:
    lexicon = _load_lexicon(config, args.lexicon)
    tagged = tag(split(args.name), lexicon)
    out.write(" ".join(f"{t}/{g.value}" for t, g in tagged.pairs()) + "\n")
    out.write(tagged.pattern_string() + "\n")
    return EXIT_OK


def _cmd_pattern(args, config: Config, out, err) -> int:
    lexicon = _load_lexicon(config)
    tagged = tag(split(args.name), lexicon)
    pattern = patterns.pattern_of(tagged)
    if args.prefix is not None:
        if args.prefix < 1:
            raise CliError("--prefix must be >= 1")
        pattern = patterns.prefix(pattern, args.prefix)
    out.write(str(pattern) + "\n")
    if args.catalog:
        for entry in patterns.catalog_match(pattern, _load_catalog(config)):
            out.write(f"{entry.name} [{entry.template}] ({entry.origin.value})\n")
    return EXIT_OK


def _scan_records(target: str, out_err: list[str]):
    records = []
    for path in _iter_java_files(target):
        src = _read_source(path)
        try:
            methods = extraction.extract_methods(src)
            partial = False
        except extraction.PartialParseError as perr:
            methods = perr.methods
            partial = True
            out_err.append(str(perr))
        has_junit = extraction.has_junit_import(src)
        record = {
            "path": path,
            "is_test_file": has_junit and any(extraction.is_test_method(m) for m in methods),
            "partial": partial,
            "methods": [
                {
                    "name": m.name,
                    "annotations": list(m.annotations),
                    "is_test_method": extraction.is_test_method(m),
                    "name_span": list(m.name_span),
                    "body_span": list(m.body_span),
                }
                for m in methods
            ],
        }
        records.append((src, methods, record))
    return records


def _cmd_scan(args, config: Config, out, err) -> int:
    parse_errors: list[str] = []
    records = [rec for _, _, rec in _scan_records(args.target, parse_errors)]
    out.write(json.dumps({"files": records}, indent=2, sort_keys=True) + "\n")
    if parse_errors:
        for message in parse_errors:
            err.write(message + "\n")
        return EXIT_ERROR
    return EXIT_OK


def _cmd_lint(args, config: Config, out, err) -> int:
    lexicon = _load_lexicon(config)
    rules = lint_mod.default_rules(
        collection_vocabulary=config.collection_vocabulary,
        not_rule_boolean_asserts=config.not_rule_boolean_asserts,
    )
    enabled = args.rules.split(",") if args.rules else (
        list(config.rules) if config.rules is not None else None
    )
    if enabled is not None:
        known = {r.id for r in rules}
        unknown = [r for r in enabled if r not in known]
        if unknown:
            raise CliError(f"unknown rule id(s): {', '.join(unknown)}")
        rules = tuple(r for r in rules if r.id in enabled)

    parse_errors: list[str] = []
    diagnostics: list[lint_mod.Diagnostic] = []
    for src, methods, record in _scan_records(args.target, parse_errors):
        if not record["is_test_file"]:
            continue
        for method in methods:
            if not extraction.is_test_method(method):
                continue
            seq = split(method.name)
            if not seq.terms:
                continue
            tagged = tag(seq, lexicon)
            diagnostics.extend(lint_mod.lint(method, tagged, rules, file=src.path))
    diagnostics.sort(key=lambda d: (d.file, d.name_span, d.rule_id))

    fmt = args.format or config.format or "text"
    if fmt == "json":
        doc = [
            {
                "rule": d.rule_id,
                "method": d.method_name,
                "file": d.file,
                "name_span": list(d.name_span),
                "message": d.message,
                "severity": d.severity,
            }
            for d in diagnostics
        ]
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif fmt == "text":
        for d in diagnostics:
            err.write(
                f"{d.file}:{d.name_span[0]}-{d.name_span[1]}: "
                f"{d.severity} {d.rule_id}: {d.method_name}: {d.message}\n"
            )
    else:
        raise CliError(f"unsupported lint format {fmt!r}")
    for message in parse_errors:
        err.write(message + "\n")
    if parse_errors:
        return EXIT_ERROR
    return EXIT_FINDINGS if diagnostics else EXIT_OK


def _cmd_rename_detect(args, config: Config, out, err) -> int:
    threshold = args.threshold if args.threshold is not None else config.threshold
    pair = renamedetect.FileVersionPair(
        before=_read_source(args.before),
        after=_read_source(args.after),
    )
    try:
        events = renamedetect.detect_renames(pair, threshold)
    except ValueError as verr:
        raise CliError(str(verr)) from verr
    doc = [
        {
            "old_name": e.old_name,
            "new_name": e.new_name,
            "file": e.file or "",
            "commit": e.commit or "",
        }
        for e in events
    ]
    out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _read_events(path: str) -> list[rename_mod.RenameEvent]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise CliError(f"cannot read {path}: {err}") from err
    rows: list[dict]
    if text.lstrip().startswith("["):
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as jerr:
            raise CliError(f"{path}: invalid JSON: {jerr}") from jerr
    else:
        reader = csv.DictReader(io.StringIO(text))
        required = {"old_name", "new_name"}
        if not reader.fieldnames or not required <= set(reader.fieldnames):
            raise CliError(f"{path}: CSV header must include old_name,new_name")
        rows = list(reader)
    events = []
    for i, row in enumerate(rows):
        try:
            events.append(
                rename_mod.RenameEvent(
                    old_name=row["old_name"],
                    new_name=row["new_name"],
                    file=row.get("file") or None,
                    commit=row.get("commit") or None,
                )
            )
        except (KeyError, ValueError, TypeError) as verr:
            raise CliError(f"{path}: record {i}: {verr}") from verr
    return events


def _classification_doc(c: rename_mod.RenameClassification) -> dict:
    return {
        "old_name": c.event.old_name,
        "new_name": c.event.new_name,
        "file": c.event.file or "",
        "commit": c.event.commit or "",
        "form": c.form.value,
        "semantics": c.semantics.value,
        "pairs": [
            {"added": a, "removed": r, "relation": rel.value}
            for a, r, rel in c.pairs
        ],
    }


def _cmd_rename_classify(args, config: Config, out, err) -> int:
    events = _read_events(args.input)
    provider = rename_mod.CuratedRelationProvider.default()
    lexicon = _load_lexicon(config)
    results = [rename_mod.classify(e, provider, lexicon) for e in events]
    fmt = args.format or config.format or "json"
    if fmt == "json":
        out.write(json.dumps([_classification_doc(c) for c in results],
                             indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["old_name", "new_name", "file", "commit",
                         "form", "semantics", "pairs"])
        for c in results:
            pairs = ";".join(f"{a}->{r}:{rel.value}" for a, r, rel in c.pairs)
            writer.writerow([c.event.old_name, c.event.new_name,
                             c.event.file or "", c.event.commit or "",
                             c.form.value, c.semantics.value, pairs])
    elif fmt == "md":
        out.write("| Old Name | New Name | Form | Semantics | Pairs |\n")
        out.write("| --- | --- | --- | --- | --- |\n")
        for c in results:
            pairs = ", ".join(f"{a}/{r} ({rel.value})" for a, r, rel in c.pairs)
            out.write(f"| {c.event.old_name} | {c.event.new_name} "
                      f"| {c.form.value} | {c.semantics.value} | {pairs} |\n")
    else:
        raise CliError(f"unsupported classify format {fmt!r}")
    return EXIT_OK


def _parse_prefix_lens(raw: str) -> tuple[int, ...]:
    raw = raw.strip()
    try:
        if ".." in raw:
            lo_text, _, hi_text = raw.partition("..")
            lo, hi = int(lo_text), int(hi_text)
            if lo < 1 or hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1))
        value = int(raw)
        if value < 1:
            raise ValueError
        return (value,)
    except ValueError:
        raise CliError(f"invalid --prefix-len {raw!r}; use N or N..M") from None


def _cmd_report(args, config: Config, out, err) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            rows = json.load(fh)
    except OSError as oerr:
        raise CliError(f"cannot read {args.input}: {oerr}") from oerr
    except json.JSONDecodeError as jerr:
        raise CliError(f"{args.input}: invalid JSON: {jerr}") from jerr
    if not isinstance(rows, list):
        raise CliError(f"{args.input}: expected a JSON array of classifications")
    lexicon = _load_lexicon(config)
    catalog = _load_catalog(config)
    prefix_lens = _parse_prefix_lens(args.prefix_len)
    if args.k < 1:
        raise CliError("--k must be >= 1")
    stats = report.CorpusStats()
    for i, row in enumerate(rows):
        try:
            event = rename_mod.RenameEvent(
                old_name=row["old_name"],
                new_name=row["new_name"],
                file=row.get("file") or None,
                commit=row.get("commit") or None,
            )
            classification = rename_mod.RenameClassification(
                event=event,
                form=rename_mod.FormCategory(row["form"]),
                semantics=rename_mod.SemanticCategory(row["semantics"]),
                pairs=tuple(
                    (p["added"], p["removed"], rename_mod.TermRelation(p["relation"]))
                    for p in row.get("pairs", ())
                ),
            )
        except (KeyError, ValueError, TypeError) as verr:
            raise CliError(f"{args.input}: record {i}: {verr}") from verr
        old_pattern = patterns.pattern_of(tag(split(event.old_name), lexicon))
        new_pattern = patterns.pattern_of(tag(split(event.new_name), lexicon))
        report.accumulate(stats, classification, (old_pattern, new_pattern), catalog)
    fmt = args.format or config.format or "md"
    try:
        out.write(report.render_table(stats, args.table, fmt, args.k, prefix_lens))
    except ValueError as verr:
        raise CliError(str(verr)) from verr
    return EXIT_OK


_COMMANDS = {
    "split": _cmd_split,
    "tag": _cmd_tag,
    "pattern": _cmd_pattern,
    "scan": _cmd_scan,
    "lint": _cmd_lint,
    "report": _cmd_report,
}


def run(argv: list[str], out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_err:
        return EXIT_ERROR if exit_err.code not in (0, None) else EXIT_OK
    try:
        config = load_config()
        if args.command == "rename":
            handler = (_cmd_rename_detect if args.rename_command == "detect"
                       else _cmd_rename_classify)
        else:
            handler = _COMMANDS[args.command]
        return handler(args, config, out, err)
    except (CliError, ConfigError, ValueError) as known:
        err.write(f"error: {known}\n")
        return EXIT_ERROR
    except OSError as oserr:
        err.write(f"error: {oserr}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))
