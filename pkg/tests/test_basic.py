from infotheo import coord


def test_version():
    assert coord.__version__


def test_public_api():
    missing = [i for i in coord.__all__ if not hasattr(coord, i)]
    assert not missing


def test_params():
    Cnt = coord.get_params(restarts=3, seed=None)
    assert Cnt['restarts'] == 3
    assert Cnt['seed'] == 0
    assert Cnt['tol_markov'] == 1e-6
    assert Cnt['tstar_start'] is True
    assert 'tol_compose' not in Cnt
    try:
        coord.get_params(unknown=1)
    except KeyError as exc:
        assert 'unknown' in str(exc)
    else:
        raise AssertionError("unknown parameter accepted")
