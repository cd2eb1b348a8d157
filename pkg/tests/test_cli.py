import json

from pytest import approx, fixture, mark

from infotheo.coord import cli, pmf
from infotheo.coord.opt import dsbs_wyner_channel


@fixture
def dist(tmp_path):
    fname = tmp_path / "dsbs.json"
    pmf.save_joint_pmf(pmf.dsbs_joint(.2), fname)
    return str(fname)


@fixture
def aux(tmp_path):
    """U constant, U1 = X, U2 = Y"""
    fname = tmp_path / "aux.json"
    fname.write_text(json.dumps({
        'card_u': 1, 'card_u1': 2, 'card_u2': 2,
        'cond': {f"{x},{y}": [float(i == 2*x + y) for i in range(4)]
                 for x in range(2) for y in range(2)}}))
    return str(fname)


def test_help(capsys):
    assert cli.main(["--help"]) == 0
    out, _ = capsys.readouterr()
    assert "infocoord" in out
    assert cli.main(["dsbs", "--help"]) == 0
    assert "--tstar" in capsys.readouterr()[0]


def test_usage_error():
    code, text = cli.dispatch(["nonexistent"])
    assert code == 1 and not text
    code, _ = cli.dispatch([])
    assert code == 1


def test_info(dist):
    code, text = cli.dispatch(["info", "--dist", dist])
    assert code == 0
    assert float(text) == approx(0.278071905112638, abs=1e-14)
    code, text = cli.dispatch(["info", "--dist", dist, "--measure", "tv"])
    assert float(text) == approx(.3)
    code, text = cli.dispatch(["info", "--dist", dist, "--measure", "entropy"])
    assert float(text) == approx(1 + pmf.binary_entropy(.2))


def test_invalid_input(tmp_path, dist, capsys):
    code, text = cli.dispatch(["info", "--dist", str(tmp_path / "missing.json")])
    assert code == 1 and not text
    assert "error" in capsys.readouterr()[1]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({'pmf': [[.5, .5], [.5, .5]]}))
    assert cli.dispatch(["info", "--dist", str(bad)])[0] == 1
    assert cli.dispatch(["info", "--dist", dist, "--measure", "kl"])[0] == 1
    assert cli.dispatch(["info"])[0] == 1


def test_dsbs(tmp_path, capsys):
    assert cli.main(["dsbs", "--a", "0.1", "--tstar"]) == 0
    assert float(capsys.readouterr()[0]) == approx(0.343436, abs=1e-6)
    fname = tmp_path / "curve.csv"
    code, _ = cli.dispatch(["dsbs", "--a", "0.1", "--out", str(fname)])
    assert code == 0
    lines = fname.read_text().splitlines()
    assert lines[0] == "t,f,i_joint,i_cond"
    assert len(lines) == 102
    t, f = map(float, lines[1].split(',')[:2])
    assert t == 0 and f == approx(0.436380283400076, abs=1e-14)
    code, text = cli.dispatch(["dsbs", "--a", "0.2"])
    assert "t_star 0.4425" in text
    assert cli.dispatch(["dsbs", "--a", "0.7"])[0] == 1


def test_region(dist, aux):
    base = ["region", "check", "--dist", dist, "--aux", aux, "--rates"]
    assert cli.dispatch(base + ["0.28,0.9,0.9"]) == (0, "member")
    assert cli.dispatch(base + ["0.27,0.9,0.9"]) == (0, "non-member")
    assert cli.dispatch(base + ["0.28,0.9"])[0] == 1
    assert cli.dispatch(["region", "xy-equal", "--hx", "1", "--rates", "0.5,0.5,0.5"]) == (
        0, "member")
    assert cli.dispatch(["region", "xy-equal", "--hx", "1", "--rates", "0.49,10,10"]) == (
        0, "non-member")
    assert cli.dispatch(["region", "xy-equal", "--dist", dist, "--rates", "1,1,1"])[0] == 1
    assert cli.dispatch(["region", "other"])[0] == 1


def test_region_scan(dist, aux):
    code, text = cli.dispatch(
        ["region", "scan", "--dist", dist, "--aux", aux, "--r1", "0,0.9", "--r2", "0.9"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "r1,r2,r_min"
    assert len(lines) == 3
    assert float(lines[2].split(',')[2]) == approx(0.278071905112638)


def test_wyner_infeasible(dist, capsys):
    code, text = cli.dispatch(["wyner", "--dist", dist, "--card", "1", "--restarts", "2"])
    assert code == 2 and not text
    assert "Markov" in capsys.readouterr()[1]


@mark.slow
def test_wyner(dist, tmp_path):
    fname = tmp_path / "wyner.json"
    code, text = cli.dispatch(["wyner", "--dist", dist, "--restarts", "4", "--out", str(fname)])
    assert code == 0
    ch = pmf.load_aux_channel(fname)
    assert ch.card_u == 4
    code, text = cli.dispatch(["wyner", "--dist", dist, "--restarts", "4"])
    value, defect = text.splitlines()[:2]
    assert float(value) == approx(0.705904900983266, abs=1e-2)
    assert float(defect.split()[1]) <= 1e-6


@mark.slow
def test_ulsr(dist):
    code, text = cli.dispatch(["ulsr", "--dist", dist, "--restarts", "4", "--form", "maxavg"])
    assert code == 0
    assert float(text.splitlines()[0]) <= 0.177497550666439 + 1e-3
    assert cli.dispatch(["ulsr", "--dist", dist, "--form", "minmax"])[0] == 1


def test_simulate(tmp_path, dist):
    fname = tmp_path / "aux.json"
    pmf.save_aux_channel(dsbs_wyner_channel(.2), fname)
    base = ["simulate", "--dist", dist, "--aux", str(fname), "--n", "16", "--trials", "5"]
    code, text = cli.dispatch(base + ["--rates", "0.706,0.3,0.5,0.5"])
    assert code == 0
    assert "tv_per_letter" in text and "r_star" in text
    report = tmp_path / "out" / "report.json"
    code, _ = cli.dispatch(base + ["--rates", "0.706,0.3,0.5,0.5", "--out", str(report)])
    assert code == 0
    data = json.loads(report.read_text())
    assert data['trials_run'] == 5
    assert data['config_echo']['n'] == 16
    # oversized index set
    assert cli.dispatch(base + ["--rates", "0,2,0,0"])[0] == 1
