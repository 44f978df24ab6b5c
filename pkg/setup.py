import setuptools

# Commands to publish new package:
#
# rm -rf dist/
# python setup.py sdist
# twine upload dist/*

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="mfcas",
    version="0.1.0",  # remember to change libs/mfcas/__init__.py file also
    description="Exact computer algebra for matrix factorizations of quasi-homogeneous potentials: ADE orbifold equivalences, quantum dimensions, fusion and Temperley-Lieb checks.",
    license="BSD-2-Clause Plus Patent",
    long_description=long_description,
    long_description_content_type="text/markdown",
    package_dir={"": "libs"},
    packages=[
        "mfcas",
        "mfcas.adecat",
        "mfcas.adjunction",
        "mfcas.algebra",
        "mfcas.cli",
        "mfcas.homotopy",
        "mfcas.mfcore",
        "mfcas.templieb",
        "mfcas.utils",
    ],
    package_data={
        "mfcas": ["log_config.yaml"],
        "mfcas.adecat": ["data/*.json"],
    },
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.21.0",
        "scipy",
        "numba",
        "pyyaml",
        "sympy>=1.9",
    ],
    entry_points={
        "console_scripts": ["mfcas = mfcas.cli:main"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
