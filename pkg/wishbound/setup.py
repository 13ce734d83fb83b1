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
    packages=find_packages(include=['wishbound', 'wishbound.*']),
    scripts=[
        'bin/wishbound',
    ],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.24",
        "pandas>=1.5",  # lineterminator keyword of to_csv
        "pyyaml>=6.0.1",
        "tqdm>=4.66",
    ],
    extras_require={
        "test": ["pytest>=7", "hypothesis>=6.80"],
    },
)
