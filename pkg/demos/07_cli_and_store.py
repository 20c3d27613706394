"""
Command line and run store
==========================

Each subcommand appends a run record to a JSON-lines store and prints a
table.  The run id depends on the configuration and version only, so a
census split into partitions gets the same id and the same CSV as an
unsplit one.
"""

import os
import tempfile

from an_census.cli_store import export_csv, run_cli

tmp = tempfile.mkdtemp()
os.environ["AN_CENSUS_STORE"] = os.path.join(tmp, "runs.jsonl")

run_cli(["oracle-cubic", "--xmax", "100"])
run_cli(["census", "--n", "3", "--xmax", "3000", "--box-constant", "3",
         "--out", os.path.join(tmp, "one.csv")])
run_cli(["census", "--n", "3", "--xmax", "3000", "--box-constant", "3", "--partitions", "4",
         "--out", os.path.join(tmp, "four.csv")])
same = open(os.path.join(tmp, "one.csv"), "rb").read() == open(os.path.join(tmp, "four.csv"), "rb").read()
print("partitioned CSV identical:", same)

# a failing run returns a nonzero exit code instead of raising
print("exit code for a one-point fit:", run_cli(["fit", "--point", "10", "3"]))

print(export_csv().splitlines()[0])
print(len(export_csv().splitlines()) - 1, "rows in the store")
