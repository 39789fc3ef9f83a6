"""End-to-end checks of the offsim executable. Usage: check_cli.py BIN SCHEMA CHECK"""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

BIN, SCHEMA, CHECK = sys.argv[1], sys.argv[2], sys.argv[3]


def run(*args, expect=0):
    p = subprocess.run([BIN, *args], capture_output=True, text=True)
    if p.returncode != expect:
        sys.exit(f"{' '.join(args)}: exit {p.returncode}, wanted {expect}\n{p.stderr}")
    return p.stdout


def determinism():
    args = ("attack", "fx-q1", "--n", "6", "--m", "3", "--u", "4", "--trials", "4", "--seed", "9")
    a = run(*args)
    b = run(*args, "--jobs", "2")
    assert a == b, "outputs differ"
    assert run(*args[:-1], "10") != a, "seed has no effect"


def capacity():
    run("attack", "em-q1", "--n", "40", "--u", "4", expect=4)
    run("attack", "fx-q2", "--n", "8", "--m", "8", "--backend", "exact", expect=4)


def config_errors():
    run("verify-bounds", "--trials", "0", expect=2)
    run("attack", "nope", expect=2)
    run("attack", "em-q1", "--n", "8", "--u", "4", "--trials", "0", expect=2)
    run("estimate", "--n", "64", expect=2)


def estimate_desx():
    out = run("estimate", "--preset", "desx")
    assert "135" in out, out
    doc = json.loads(run("estimate", "--preset", "desx", "--json"))
    assert doc["estimates"][0]["queries"] == 135
    assert doc["estimates"][0]["log2_T"] == 29.0


def c_too_small():
    doc = json.loads(run("verify-bounds", "--suite", "pbad", "--c", "1", "--n", "8",
                         "--functions", "2", "--trials", "200"))
    assert "c-too-small" in doc["flags"], doc["flags"]


def gen_roundtrip():
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "p.txt")
        run("gen", "permutation", "--n", "6", "--seed", "4", "--out", path)
        with open(path) as f:
            lines = f.read().split()
        assert lines[0] == "n=6", lines[0]
        assert sorted(int(v, 16) for v in lines[1:]) == list(range(64))
        assert run("gen", "permutation", "--n", "6", "--seed", "4") == open(path).read()
    inst = json.loads(run("gen", "instance", "--kind", "em", "--n", "8", "--u", "4", "--seed", "2"))
    assert inst, "empty instance"


def schema():
    with open(SCHEMA) as f:
        s = json.load(f)
    docs = [
        run("attack", "em-q1", "--n", "8", "--u", "4", "--trials", "3"),
        run("attack", "slide-ifx", "--n", "5", "--m", "3", "--backend", "structured"),
        run("attack", "beetle", "--u", "4", "--timing"),
        run("estimate", "--preset", "all", "--json"),
        run("estimate", "--n", "16", "--m", "8", "--u", "4", "--json"),
        run("verify-bounds", "--functions", "2", "--trials", "200"),
    ]
    for text in docs:
        jsonschema.validate(json.loads(text), s)
    bad = json.loads(docs[0])
    bad["reports"][0]["counters"]["f_queries"] = -1
    try:
        jsonschema.validate(bad, s)
    except jsonschema.ValidationError:
        return
    sys.exit("schema accepted a negative counter")


globals()[CHECK]()
print(f"{CHECK}: ok")
