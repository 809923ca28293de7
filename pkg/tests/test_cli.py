import numpy as np
import pytest

from cmatvec import build_csr, compress, matvec_csr
from cmatvec.bench import TSV_COLUMNS, BenchReport
from cmatvec.cli import main
from cmatvec.io import load_cover, load_edge_list, load_rmv, save_edge_list


@pytest.fixture
def chain_file(tmp_path):
    path = tmp_path / "chain.txt"
    assert main(["gen", "copy-chain", "--n", "300", "--degree", "12", "--mutate", "0.05",
                 "--seed", "3", "--out", str(path)]) == 0
    return path


def test_gen_is_seeded(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for p in (a, b):
        assert main(["gen", "er", "--n", "500", "--m", "2000", "--seed", "1", "--out", str(p)]) == 0
    assert a.read_text() == b.read_text()


def test_compress_and_decompress(chain_file, tmp_path):
    rmv, back = tmp_path / "c.rmv", tmp_path / "back.txt"
    assert main(["compress", str(chain_file), "--window", "4", "--out", str(rmv)]) == 0
    g = load_edge_list(str(chain_file))
    assert load_rmv(rmv) == compress(g, 4)
    assert main(["decompress", str(rmv), "--out", str(back)]) == 0
    assert load_edge_list(str(back)) == g


def test_stats_output(chain_file, capsys):
    assert main(["stats", str(chain_file), "--window", "4"]) == 0
    out = dict(line.split("\t")[:2] for line in capsys.readouterr().out.splitlines())
    g = load_edge_list(str(chain_file))
    rm = compress(g, 4)
    assert int(out["m"]) == g.m and int(out["m_prime"]) == rm.m_prime


@pytest.mark.parametrize("kernel", ["csr", "ref", "biclique"])
def test_matvec(chain_file, tmp_path, kernel):
    g = load_edge_list(str(chain_file))
    x = np.linspace(-1, 1, g.n)
    vec = tmp_path / "x.txt"
    np.savetxt(vec, x)
    out = tmp_path / "y.txt"
    assert main(["matvec", str(chain_file), "--vector", str(vec), "--kernel", kernel,
                 "--out", str(out)]) == 0
    np.testing.assert_allclose(np.loadtxt(out), matvec_csr(g, x), atol=1e-9)


def test_matvec_uniform_from_container(chain_file, tmp_path, capsys):
    rmv = tmp_path / "c.rmv"
    main(["compress", str(chain_file), "--out", str(rmv)])
    assert main(["matvec", str(rmv), "--uniform"]) == 0
    y = np.array(capsys.readouterr().out.split(), dtype=float)
    assert y.tolist() == matvec_csr(load_edge_list(str(chain_file)), np.ones(300)).tolist()


def test_pagerank_kernels_agree(chain_file, tmp_path):
    vecs = {}
    for kernel in ("csr", "ref", "biclique"):
        out = tmp_path / f"p_{kernel}.txt"
        assert main(["pagerank", str(chain_file), "--kernel", kernel, "--iters", "20",
                     "--dangling", "uniform", "--out", str(out)]) == 0
        vecs[kernel] = np.loadtxt(out)
    assert abs(vecs["csr"].sum() - 1) < 1e-10
    assert np.abs(vecs["csr"] - vecs["ref"]).max() <= 1e-9
    assert np.abs(vecs["csr"] - vecs["biclique"]).max() <= 1e-9


def test_pagerank_top(chain_file, capsys):
    assert main(["pagerank", str(chain_file), "--top", "3", "--tol", "1e-6", "--iters", "100"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    ranks = [float(line.split("\t")[1]) for line in lines]
    assert ranks == sorted(ranks, reverse=True)


def test_pagerank_bad_alpha(chain_file, capsys):
    assert main(["pagerank", str(chain_file), "--alpha", "1.5"]) == 1
    assert "alpha" in capsys.readouterr().err


def test_bench_tsv(chain_file, tmp_path):
    out = tmp_path / "r.tsv"
    assert main(["bench", str(chain_file), "--reps", "2", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.splitlines()[0].split("\t") == list(TSV_COLUMNS)
    (row,) = BenchReport.from_tsv(text).rows
    assert row.ratio == pytest.approx(row.m / row.m_prime, rel=1e-5)
    assert row.speedup == pytest.approx(row.t / row.t_prime, rel=1e-4)
    assert row.linf <= 1e-9


def test_biclique_extract_and_verify(tmp_path):
    graph, cover = tmp_path / "b.txt", tmp_path / "cover.txt"
    main(["gen", "biclique", "--n", "300", "--degree", "20", "--m", "50", "--out", str(graph)])
    assert main(["biclique-extract", str(graph), "--out", str(cover)]) == 0
    assert load_cover(cover).compressed_size < load_edge_list(str(graph)).m
    assert main(["verify-cover", str(graph), str(cover)]) == 0
    other = tmp_path / "other.txt"
    save_edge_list(build_csr([(0, 1)], 300), other)
    assert main(["verify-cover", str(other), str(cover)]) == 1


def test_corrupt_container_no_output(chain_file, tmp_path, capsys):
    rmv = tmp_path / "c.rmv"
    main(["compress", str(chain_file), "--out", str(rmv)])
    data = rmv.read_bytes()
    bad = tmp_path / "bad.rmv"
    bad.write_bytes(data[: len(data) // 2])
    for argv in (["decompress", str(bad)], ["matvec", str(bad), "--uniform"],
                 ["stats", str(bad)], ["pagerank", str(bad)]):
        out = tmp_path / "out.txt"
        assert main(argv + ["--out", str(out)]) != 0
        assert not out.exists()
    assert "error" in capsys.readouterr().err


def test_malformed_edge_list_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("0 1\n2\n")
    assert main(["stats", str(path)]) == 1
    assert "line 2" in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["stats", "/nonexistent/graph.txt"]) == 1
