#!/usr/bin/env python3
# Validates data/*.json and the output of each subcommand against docs/schemas.
# usage: check_schemas.py SOURCE_DIR SYLVAN_BINARY
import glob
import json
import os
import subprocess
import sys

import jsonschema

os.chdir(sys.argv[1])
SCHEMAS = {n: json.load(open(f'docs/schemas/{n}.schema.json')) for n in ['extension','matrix','report']}
for v in SCHEMAS.values(): jsonschema.Draft202012Validator.check_schema(v)
for f in sorted(glob.glob('data/*.json')):
    d = json.load(open(f))
    kind = 'extension' if 'kind' in d else 'matrix'
    jsonschema.validate(d, SCHEMAS[kind]); print('ok', f)
B = sys.argv[2]
cmds = [
 [B,'rank','--spec','data/qz.json','--matrix','data/one_minus_z.json','--schedule','box:2^k,k=2..6'],
 [B,'rank','--spec','data/z2.json','--matrix','data/one_plus_s.json','--schedule','group:full'],
 [B,'fieldext','--spec','data/qt.json','--matrix','data/t_minus_one.json','--mode','evalpoints'],
 [B,'fieldext','--spec','data/qt.json','--matrix','data/t_minus_one.json'],
 [B,'tower','--spec','data/gaussian_t.json','--matrix','data/it_minus_one.json'],
 [B,'trace-compare','--spec','data/qz.json','--matrix','data/one_minus_z.json','--schedule','box:2^k,k=2..6'],
 [B,'axioms','--rank','trace','--group','S3','--trials','20'],
 [B,'quasitile','--tiling','kt','--n','2','--N','12'],
]
for c in cmds:
    r = subprocess.run(c, capture_output=True, text=True)
    jsonschema.validate(json.loads(r.stdout), SCHEMAS['report']); assert r.returncode == 0, r.stderr
    print('ok', ' '.join(c[1:3]))
