"""
Setup script for coopgraph
"""
from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="coopgraph",
    version="1.0.0",
    author="coopgraph contributors",
    description="Exact and mean-field conditions for cooperation on networks",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    py_modules=["main", "config", "errors"],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.26.3",
        "scipy>=1.11.0",
        "pandas>=2.1.0",
        "pydantic>=2.6.1",
        "pyyaml>=6.0.1",
        "python-slugify>=8.0.4",
        "tqdm>=4.66.1",
        "colorama>=0.4.6",
        "click>=8.1.7",
    ],
    extras_require={
        "test": ["pytest>=7.4.0", "networkx>=3.1"],
    },
    entry_points={
        "console_scripts": [
            "coopgraph=main:cli",
        ],
    },
)
