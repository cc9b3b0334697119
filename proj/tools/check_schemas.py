#!/usr/bin/env python3
"""Validates ntmctx tree outputs and event logs against schemas/."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

NAMES = ["ntm-event", "ntm-graph", "ntm-run-result", "ntm-awareness-report",
         "ntm-effectiveness-report", "ntm-refinement-report"]


def main(ntmctx, root):
    root = pathlib.Path(root)
    fx = root / "fixtures"
    schemas = {n: json.loads((root / "schemas" / f"{n}.schema.json").read_text()) for n in NAMES}
    registry = Registry().with_resources(
        [(f"{n}.schema.json", Resource.from_contents(s)) for n, s in schemas.items()])

    def validate(name, instance):
        jsonschema.Draft202012Validator(schemas[name], registry=registry).validate(instance)

    def tree(*args):
        out = subprocess.run([ntmctx, *map(str, args)], capture_output=True, text=True)
        return json.loads(out.stdout)

    cases = [
        ("ntm-graph", ["graph", fx / "model1.ctx", "--format", "tree"]),
        ("ntm-graph", ["graph", fx / "model2.ctx", "--format", "tree"]),
        ("ntm-run-result", ["simulate", fx / "feedback_counter.json", "--json"]),
        ("ntm-run-result", ["simulate", fx / "model2_net.json", "--trace", fx / "model2_trace.json", "--json"]),
        ("ntm-awareness-report", ["check-awareness", fx / "model2_net.json", fx / "model2_trace.json", "--json"]),
        ("ntm-awareness-report",
         ["check-awareness", fx / "model2_net.json", fx / "model2_trace_no_location.json", "--json"]),
        ("ntm-effectiveness-report",
         ["check-effective", fx / "redundancy_net.json", fx / "redundancy_trace.json", "--subset", "a", "--json"]),
        ("ntm-refinement-report",
         ["refine", fx / "model1.ctx", fx / "model2.ctx", "--map", fx / "model1_to_model2.map.json", "--json"]),
    ]
    for name, args in cases:
        validate(name, tree(*args))
        print("ok", name, args[0])

    with tempfile.TemporaryDirectory() as tmp:
        log = pathlib.Path(tmp) / "run.jsonl"
        for net in ["pipeline_speeds.json", "feedback_counter.json"]:
            subprocess.run([ntmctx, "simulate", str(fx / net), "--log", str(log)], check=True, capture_output=True)
            lines = log.read_text().splitlines()
            for line in lines:
                validate("ntm-event", json.loads(line))
            print("ok ntm-event", net, len(lines), "lines")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
