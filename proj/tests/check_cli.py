"""Run the rmspec binary and validate its JSON output against the shipped schemas."""

import csv
import io
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

BINARY = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])

RUNS = {
    "words": [["words", "3"], ["words", "6", "--samples", "2000"]],
    "moments": [
        ["moments", "toeplitz", "--order", "6"],
        ["moments", "hankel", "--order", "4", "--method", "mc", "--samples", "5000"],
        ["moments", "semicircle", "--order", "8"],
    ],
    "simulate": [["simulate", "markov", "--n", "48", "--replicates", "3", "--max-moment", "4"]],
    "norm-scan": [["norm-scan", "--ns", "1,32", "--replicates", "2"]],
}


def run(args, expect=0):
    proc = subprocess.run([BINARY, *args], capture_output=True, text=True, check=False)
    if proc.returncode != expect:
        sys.exit(f"{args}: exit {proc.returncode}, expected {expect}\n{proc.stderr}")
    return proc.stdout


def main():
    for command, invocations in RUNS.items():
        schema = json.loads((SCHEMAS / f"{command}.schema.json").read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        for args in invocations:
            text = run(args)
            doc = json.loads(text)
            jsonschema.validate(doc, schema, cls=jsonschema.Draft202012Validator)
            if run(args) != text:
                sys.exit(f"{args}: output differs between reruns")
            rows = list(csv.DictReader(io.StringIO(run([*args, "--format", "csv"]))))
            if len(rows) != len(doc["rows"]):
                sys.exit(f"{args}: csv and json row counts differ")
            print(f"ok {' '.join(args)}")

    with tempfile.TemporaryDirectory() as tmp:
        run(["simulate", "toeplitz", "--n", "32", "--replicates", "2", "--out-dir", tmp])
        out = pathlib.Path(tmp)
        schema = json.loads((SCHEMAS / "simulate.schema.json").read_text())
        jsonschema.validate(json.loads((out / "moments.json").read_text()), schema)
        eig = (out / "eigenvalues.csv").read_text().splitlines()
        if eig[0] != "eigenvalue" or len(eig) != 65:
            sys.exit("eigenvalues.csv malformed")
        if not (out / "histogram.csv").read_text().startswith("bin_left,bin_right,count,density"):
            sys.exit("histogram.csv malformed")
        print("ok simulate --out-dir")

    run(["moments", "toeplitz", "--order", "30"], expect=3)
    run(["moments", "nonsense"], expect=2)
    print("ok exit codes")


if __name__ == "__main__":
    main()
