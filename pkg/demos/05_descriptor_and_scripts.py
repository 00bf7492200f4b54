# Save a family, reload it and write scripts for Macaulay2 and Sage.

import tempfile
from pathlib import Path

from spiderflat import FamilyDescriptor, build_family, describe, emit_script, to_family

fam = build_family((2, 2, 1))
out = Path(tempfile.mkdtemp())
describe(fam).save(out / "family.json")

back = to_family(FamilyDescriptor.load(out / "family.json"))
print("round trip exact:", back.family == fam.family)

for dialect, ext in (("m2", "m2"), ("sage", "sage")):
    path = out / f"verify.{ext}"
    path.write_text(emit_script(back, dialect).body)
    print("wrote", path)
print((out / "verify.m2").read_text())
