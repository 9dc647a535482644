"""Find and re-check a wall-crossing certificate for every small component.

Run with ``python demos/path_certificates.py``. Each line shows the verdict and
how many walls the path crossed; every certificate is then verified from its
JSON form alone, as a second reader would.
"""
import json
import warnings
from math import gcd

from chainstab.atlas import enumerate_components
from chainstab.pathfinder import find_path, verify_certificate

G = 2
warnings.simplefilter("ignore")
for n in (1, 2, 3):
    for D in (1, 2):
        if gcd(n, D) != 1:
            continue
        for comp in enumerate_components(n, D, G).components:
            cert = find_path(comp.chain, G)
            again = verify_certificate(json.loads(json.dumps(cert.to_json())))
            v = cert.verdict
            where = f" via {v.test_chain}" if v.test_chain else ""
            print(f"n={n} D={D} {comp.name:<18} {v.kind}{where}, "
                  f"{len(cert.crossings)} crossings, verified={again.ok}")
