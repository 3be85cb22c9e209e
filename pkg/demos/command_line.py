"""Driving the command line interface from Python.

The same calls work from a shell as ``conres gen ...`` and so on.
"""
import tempfile
from pathlib import Path

from conres.cli import main


def main_demo():
    with tempfile.TemporaryDirectory() as tmp:
        doc = Path(tmp) / "triangle.json"
        main(["gen", "cycle", "--n", "3", "--theta", "pi/2", "-o", str(doc)])
        print(doc.read_text())
        for q in ("chung-cr", "scalar-cr", "conductance"):
            print(f"$ conres compute --quantity {q}")
            main(["compute", "-i", str(doc), "--pair", "1", "2", "--quantity", q])
        print("$ conres check")
        main(["check", "-i", str(doc), "--mc-samples", "20000"])
        print("$ conres sweep wheatstone")
        main(["sweep", "wheatstone", "--theta-grid", "0:2pi:5"])


if __name__ == "__main__":
    main_demo()
