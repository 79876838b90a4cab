from app.scripts import convergence_study


def test_convergence_study_reaches_the_floor(capsys):
    assert convergence_study.main(["--caps", "8", "--orders", "8,64"]) == 0
    out = capsys.readouterr().out
    assert out.count("[RUN]") == len(convergence_study.CORPUS)
    assert "[OK] ordine 64" in out


def test_convergence_study_reports_every_order():
    errors = convergence_study.study(8, [4, 64], ["1 - z1*conj(z1)"])
    assert errors["1 - z1*conj(z1)"][1] < 1e-13
