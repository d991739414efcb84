"""Unit tests for text, CSV and JSON rendering.

Copyright (c) 2024 collatzk maintainers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import json

from collatzk.analysis import figure_dataset
from collatzk.check import run_cross_check
from collatzk.dynamics import trajectory
from collatzk.enum import CycleTag, OutputFormat
from collatzk.models import AnalysisRow, OutputRecord, Params
from collatzk.render import (
    FIGDATA_SCHEMA,
    figdata_filename,
    load_table_metadata,
    render_check,
    render_figdata,
    render_report,
    render_sequence,
    render_spot,
    render_table,
    table_column,
    write_output,
)
from collatzk.verifier import run_sweep, spot_check_large


def test_table_metadata():
    metadata = load_table_metadata()
    assert metadata.ks == (0, 1, 2, 3, 4)
    assert metadata.n_max == 17
    assert metadata.column_length(0, 7) == 19
    assert metadata.column_length(4, 17) == 15
    assert metadata.column_length(0, 18) is None
    assert metadata.column_length(5, 1) is None


def test_render_table_matches_published_layout(golden_table):
    assert render_table(range(5), 17, OutputFormat.TABLE) == golden_table


def test_table_column_published(k0):
    assert table_column(1, k0) == [4, 2, 1]
    assert table_column(17, Params(k=1)) == list(trajectory(17, Params(k=1)).terms[1:]) + [12, 6, 3]


def test_table_column_beyond_published(k0):
    """Columns the table does not cover run one loop past the first 3^k."""
    column = table_column(18, k0)
    assert len(column) == 23
    assert column[-4:] == [1, 4, 2, 1]


def test_render_table_json_and_csv(k0):
    payload = json.loads(render_table([0], 2, OutputFormat.JSON))
    assert payload == {"3n+1": {"1": ["4", "2", "1"], "2": ["1", "4", "2", "1"]}}

    text = render_table([0], 1, OutputFormat.CSV)
    assert text == "k,n,row,term\n0,1,1,4\n0,1,2,2\n0,1,3,1\n"


def test_render_sequence(k0):
    traj = trajectory(3, k0)
    assert render_sequence(traj, k0, OutputFormat.TABLE) == (
        "n=3 3n+1 status=reached-target t=7\n10\n5\n16\n8\n4\n2\n1\n"
    )
    assert render_sequence(traj, k0, OutputFormat.CSV).splitlines()[:3] == ["index,term", "1,10", "2,5"]
    payload = json.loads(render_sequence(traj, k0, OutputFormat.JSON))
    assert payload == {
        "n": "3",
        "k": 0,
        "map": "3n+1",
        "status": "reached-target",
        "t": 7,
        "terms": ["10", "5", "16", "8", "4", "2", "1"],
    }


def test_render_sequence_unresolved(k0):
    text = render_sequence(trajectory(27, k0, budget=2), k0, OutputFormat.TABLE)
    assert text == "n=27 3n+1 status=budget-exhausted t=unresolved\n82\n41\n"


def test_render_sequence_huge_terms_in_full(k0):
    n = 2**20000 + 1
    payload = json.loads(render_sequence(trajectory(n, k0, budget=1), k0, OutputFormat.JSON))
    assert payload["terms"] == [str(3 * n + 1)]
    assert "e" not in payload["terms"][0]


def test_render_figdata_csv(k2):
    rows = figure_dataset(range(30, 33), k2)
    assert render_figdata([(2, (30, 32), rows)], OutputFormat.CSV) == (
        f"{FIGDATA_SCHEMA}\nn,t,odd_count,tag\n30,10,4,Standard\n31,23,9,Standard\n32,10,3,Shortcut\n"
    )


def test_render_figdata_several_datasets(k0):
    datasets = [(0, (1, 2), figure_dataset(range(1, 3), k0)), (1, (3, 3), figure_dataset(range(3, 4), Params(k=1)))]
    lines = render_figdata(datasets, OutputFormat.CSV).splitlines()
    assert lines == [
        "# k=0, window=1-2",
        FIGDATA_SCHEMA,
        "n,t,odd_count,tag",
        "1,0,1,Short",
        "2,1,1,Short",
        "# k=1, window=3-3",
        FIGDATA_SCHEMA,
        "n,t,odd_count,tag",
        "3,0,1,Short",
    ]


def test_render_figdata_unresolved_rows():
    rows = [AnalysisRow(n=27, k=0, t=None, odd_count=None, tag=CycleTag.NONE)]
    assert render_figdata([(0, (27, 27), rows)], OutputFormat.CSV).endswith("27,unresolved,unresolved,None\n")
    payload = json.loads(render_figdata([(0, (27, 27), rows)], OutputFormat.JSON))
    assert payload == [{"k": 0, "window": [27, 27], "rows": [{"n": "27", "t": None, "odd_count": None, "tag": "None"}]}]


def test_render_figdata_table(k0):
    text = render_figdata([(0, (1, 3), figure_dataset(range(1, 4), k0))], OutputFormat.TABLE)
    assert text == (
        "n  t  odd_count       tag\n1  0          1     Short\n2  1          1     Short\n3  7          3  Standard\n"
    )


def test_figdata_filename():
    assert figdata_filename(1, (500, 600)) == "figdata_k1_500-600.csv"


def test_render_check(k0):
    result = run_cross_check(range(1, 6), k0)
    assert render_check(result, OutputFormat.TABLE).startswith("terms: 5 PASS, 0 FAIL\nstopping-time: 5 PASS, 0 FAIL\n")
    assert render_check(result, OutputFormat.CSV).splitlines()[0] == "kind,pass,fail"
    payload = json.loads(render_check(result, OutputFormat.JSON))
    assert payload["k"] == 0
    assert payload["failures"] == {}


def test_render_report(make_sweep_config):
    report = run_sweep(make_sweep_config(end=30, budget=50))
    lines = render_report(report, OutputFormat.TABLE).splitlines()
    assert lines[0] == "sweep 3n+1 over 1-30 (completed)"
    assert lines[1] == "verified: 29"
    assert lines[-1] == "FAIL n=27 budget-exhausted after 50 steps"

    csv_lines = render_report(report, OutputFormat.CSV).splitlines()
    assert csv_lines[0] == "start,end,verified,failed,max_t,max_t_n,odd_max,odd_max_n,elapsed"
    assert csv_lines[3].startswith("21,30,9,1,")

    payload = json.loads(render_report(report, OutputFormat.JSON))
    assert payload["failed"] == 1
    assert payload["config"]["end"] == "30"


def test_render_spot(k0):
    result = spot_check_large(2**1000 - 1, k0)
    text = render_spot(result, OutputFormat.TABLE)
    assert "n: 1000-bit start under 3n+1\n" in text
    assert "t: 12157\n" in text
    assert json.loads(render_spot(result, OutputFormat.JSON))["n"] == str(2**1000 - 1)
    line = render_spot(result, OutputFormat.CSV).splitlines()[1]
    assert line.startswith("1000,0,reached-target,12157,12157,4316,1586,")


def test_write_output(tmp_path, capsys):
    write_output("hello\n", OutputRecord())
    assert capsys.readouterr().out == "hello\n"
    destination = tmp_path / "out.txt"
    write_output("a\nb\n", OutputRecord(destination=destination))
    assert destination.read_bytes() == b"a\nb\n"
