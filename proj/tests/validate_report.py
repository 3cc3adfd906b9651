"""Runs the CLI on a few configurations and validates each JSON report
against docs/report.schema.json."""
import json
import subprocess
import sys

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)

runs = [
    (["acyclicity", "--q", "3", "--n", "2", "--no-cache"], 0),
    (["acyclicity", "--q", "2", "--eps", "1", "--n", "2", "--no-cache"], 2),
    (["acyclicity", "--kind", "tits", "--q", "2", "--n", "3", "--no-cache"], 0),
    (["orbit", "--q", "3", "--n", "2", "--frame", "e1;e3"], 0),
    (["stab", "--q", "3", "--n", "2", "--p", "2"], 1),
    (["spectral", "bottom-row", "--q", "3", "--n", "2", "--coeff", "5"], 0),
    (["spectral", "coprime", "--coeff", "5"], 0),
    (["h1", "--q", "3", "--coeff", "2"], 0),
]
for args, want in runs:
    p = subprocess.run([cli, *args, "--json"], capture_output=True, text=True)
    report = json.loads(p.stdout)
    jsonschema.validate(report, schema)
    if p.returncode != want or report["exit_code"] != want:
        sys.exit(f"{' '.join(args)}: exit {p.returncode}, expected {want}")
    print(f"ok {report['command']} {report['verdict']}")
