# Root build manifest: the package lives in wishbound/ (see wishbound/setup.py).
from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="wishbound",
    version="0.1.0",
    author="wishbound developers",
    description="Exact marginal-pdf bounds for ordered Wishart eigenvalues and PEP diversity analysis",
    long_description=long_description,
    long_description_content_type="text/markdown",
    package_dir={"": "wishbound"},
    packages=find_packages(where="wishbound", include=['wishbound', 'wishbound.*']),
    scripts=[
        'wishbound/bin/wishbound',
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.24",
        "pandas>=1.5",
        "pyyaml>=6.0.1",
        "tqdm>=4.66",
    ],
    extras_require={
        "test": ["pytest>=7", "hypothesis>=6.80"],
    },
)
