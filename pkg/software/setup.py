from setuptools import setup

__version__ = ""
exec(open("./codim3/version.py").read())

setup(
    name="codim3",
    version=__version__,
    description="Random grade 3 perfect ideals and the classification of their Tor algebras",
    long_description="Random grade 3 perfect ideals and the classification of their Tor algebras",
    license="Apache 2.0",
    package_dir={"": "codim3"},
    py_modules=[
        "cli",
        "configuration",
        "datastore",
        "errors",
        "fields",
        "file_utils",
        "groebner",
        "inverse_system",
        "koszul",
        "linalg",
        "main_routine",
        "polynomials",
        "reports",
        "sampler",
        "sampler_config",
        "tor",
        "version",
    ],
    python_requires=">=3.9",
    install_requires=["numpy", "sympy"],
    entry_points={"console_scripts": ["codim3 = cli:main"]},
)
