"""Success rate against block size on random instances with local degree 1, via the CLI."""
# %%
import csv
import io
import subprocess
import sys

cmd = [sys.executable, "-m", "itsblowup", "sweep", "--s", "2", "--D", "2", "--r", "4", "--local-cap", "1",
       "--trials", "50", "--solver", "exhaustive"]
out = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
for row in csv.DictReader(io.StringIO(out)):
    print(f"thickness {row['thickness']:>2}: {row['successes']}/{row['trials']}")
