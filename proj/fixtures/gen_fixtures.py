#!/usr/bin/env python3
"""Regenerates the executable network fixtures in this directory."""

import json
import string
from pathlib import Path

HERE = Path(__file__).resolve().parent
DATA = list(string.digits + string.ascii_lowercase) + ["#"]
BLANK = "_"


def alphabet(symbols):
    return [BLANK] + list(symbols)


def copy_machine(mid, symbols=DATA, speed=1):
    rules = [
        {"state": "q", "work": BLANK, "inputs": [x], "next": "q", "write": BLANK, "move": "S",
         "input_moves": ["R"], "outputs": [x]}
        for x in symbols
    ]
    return {"id": mid, "states": ["q", "h"], "input_alphabet": alphabet(symbols),
            "tape_alphabet": alphabet(symbols), "num_inputs": 1, "num_outputs": 1,
            "start": "q", "halt": "h", "speed": speed, "rules": rules}


def merge_machine(mid, symbols=DATA, lock_step=False):
    """Two inputs to one output. Tape 0 has priority; with lock_step the
    second head advances together with the first."""
    rules = []
    for x in symbols:
        rules.append({"state": "q", "work": BLANK, "inputs": [x, "*"], "next": "q", "write": BLANK, "move": "S",
                      "input_moves": ["R", "R" if lock_step else "S"], "outputs": [x]})
    for y in symbols:
        rules.append({"state": "q", "work": BLANK, "inputs": [BLANK, y], "next": "q", "write": BLANK, "move": "S",
                      "input_moves": ["S", "R"], "outputs": [y]})
    return {"id": mid, "states": ["q", "h"], "input_alphabet": alphabet(symbols),
            "tape_alphabet": alphabet(symbols), "num_inputs": 2, "num_outputs": 1,
            "start": "q", "halt": "h", "rules": rules}


def relay_machine(mid, symbols=DATA):
    """soft_download: tape 0 goes out on port 0, tape 1 on port 1."""
    rules = []
    for x in symbols:
        rules.append({"state": "q", "work": BLANK, "inputs": [x, "*"], "next": "q", "write": BLANK, "move": "S",
                      "input_moves": ["R", "S"], "outputs": [x, None]})
    for y in symbols:
        rules.append({"state": "q", "work": BLANK, "inputs": [BLANK, y], "next": "q", "write": BLANK, "move": "S",
                      "input_moves": ["S", "R"], "outputs": [None, y]})
    return {"id": mid, "states": ["q", "h"], "input_alphabet": alphabet(symbols),
            "tape_alphabet": alphabet(symbols), "num_inputs": 2, "num_outputs": 2,
            "start": "q", "halt": "h", "rules": rules}


def write(name, obj):
    (HERE / name).write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def model2():
    machines = [
        copy_machine("soft_serve"),
        relay_machine("soft_download"),
        copy_machine("param_detection"),
        merge_machine("map_display"),
        copy_machine("get_location"),
        copy_machine("user_detection"),
        merge_machine("map_request"),
        copy_machine("get_map"),
    ]
    net = {
        "machines": machines,
        "connections": [
            {"from": "soft_serve.0", "to": "soft_download.1"},
            {"from": "soft_download.0", "to": "soft_serve.0"},
            {"from": "param_detection.0", "to": "soft_download.0"},
            {"from": "soft_download.1", "to": "map_display.0"},
            {"from": "get_location.0", "to": "map_request.0"},
            {"from": "user_detection.0", "to": "map_request.1"},
            {"from": "get_map.0", "to": "map_display.1"},
        ],
        "sinks": [
            {"id": "screen", "from": "map_display.0"},
            {"id": "providers", "from": "map_request.0"},
        ],
    }
    trace = {
        "variables": [
            {"id": "user", "name": "user", "description": "user interaction"},
            {"id": "location", "name": "location", "description": "GPS position"},
            {"id": "screen", "name": "screen", "description": "screen parameters"},
            {"id": "providers", "name": "providers", "description": "web map provider responses"},
        ],
        "vectors": [
            {"var": "user", "evals": [[1, "pan"], [3, "zoom2"]]},
            {"var": "location", "evals": [[0, "n40e22"], [5, "n41e23"]]},
            {"var": "screen", "evals": [[0, "w1080"], [6, "w720"]]},
            {"var": "providers", "evals": [[2, "wms1"], [8, "tile7"]]},
        ],
        "c_a": ["location", "providers", "screen", "user"],
        "bindings_in": {
            "screen": "param_detection.0",
            "user": "user_detection.0",
            "location": "get_location.0",
            "providers": "get_map.0",
        },
        "bindings_out": {"map_display.0": "screen", "map_request.0": "providers"},
    }
    write("model2_net.json", net)
    write("model2_trace.json", trace)
    del trace["bindings_in"]["location"]
    write("model2_trace_no_location.json", trace)


def redundancy():
    net = {"machines": [merge_machine("decider", lock_step=True)],
           "sinks": [{"id": "out", "from": "decider.0"}]}
    values = [[0, "go"], [4, "stop"], [9, "go"]]
    trace = {
        "variables": [{"id": "a", "name": "sensor_a", "description": "primary sensor"},
                      {"id": "b", "name": "sensor_b", "description": "redundant sensor"}],
        "vectors": [{"var": "a", "evals": values}, {"var": "b", "evals": values}],
        "c_a": ["a", "b"],
        "bindings_in": {"a": "decider.0", "b": "decider.1"},
        "bindings_out": {"decider.0": "a"},
    }
    write("redundancy_net.json", net)
    write("redundancy_trace.json", trace)


def constant_output():
    symbols = ["o", "k"] + DATA
    sym = sorted(set(symbols))
    beacon = {"id": "beacon", "states": ["s0", "s1", "h"], "input_alphabet": alphabet(sym),
              "tape_alphabet": alphabet(sym), "num_inputs": 1, "num_outputs": 1, "start": "s0", "halt": "h",
              "rules": [
                  {"state": "s0", "work": BLANK, "inputs": ["*"], "next": "s1", "write": BLANK, "move": "S",
                   "input_moves": ["S"], "outputs": ["o"]},
                  {"state": "s1", "work": BLANK, "inputs": ["*"], "next": "h", "write": BLANK, "move": "S",
                   "input_moves": ["S"], "outputs": ["k"]},
              ]}
    net = {"machines": [beacon], "sinks": [{"id": "out", "from": "beacon.0"}]}
    trace = {
        "variables": [{"id": "noise", "name": "noise", "description": "ignored input"}],
        "vectors": [{"var": "noise", "evals": [[0, "abc"], [2, "def"]]}],
        "c_a": ["noise"],
        "bindings_in": {"noise": "beacon.0"},
        "bindings_out": {},
    }
    write("constant_net.json", net)
    write("constant_trace.json", trace)


def pipeline_speeds():
    digits = list(string.digits)
    net = {
        "machines": [copy_machine("fast", digits, speed=3), copy_machine("slow", digits, speed=2)],
        "connections": [{"from": "fast.0", "to": "slow.0"}],
        "sources": [{"id": "feed", "to": "fast.0", "schedule": [[0, "3"], [0, "1"], [1, "4"], [2, "1"], [2, "5"]]}],
        "sinks": [{"id": "out", "from": "slow.0"}],
    }
    write("pipeline_speeds.json", net)


def feedback_counter():
    """Emits 'a' onto its own input tape three times, reading each back."""
    states = ["e0", "r0", "e1", "r1", "e2", "r2", "h"]
    rules = []
    for k in range(3):
        rules.append({"state": f"e{k}", "work": BLANK, "inputs": ["*"], "next": f"r{k}", "write": "a", "move": "R",
                      "input_moves": ["S"], "outputs": ["a", None]})
        nxt = f"e{k + 1}" if k < 2 else "h"
        rules.append({"state": f"r{k}", "work": BLANK, "inputs": ["a"], "next": nxt, "write": BLANK, "move": "S",
                      "input_moves": ["R"], "outputs": [None, "a"]})
    counter = {"id": "counter", "states": states, "input_alphabet": ["_", "a"], "tape_alphabet": ["_", "a"],
               "num_inputs": 1, "num_outputs": 2, "start": "e0", "halt": "h",
               "feedback": [{"port": 0, "tape": 0}], "rules": rules}
    net = {"machines": [counter], "sinks": [{"id": "ticks", "from": "counter.1"}]}
    write("feedback_counter.json", net)


if __name__ == "__main__":
    model2()
    redundancy()
    constant_output()
    pipeline_speeds()
    feedback_counter()
