from setuptools import setup, find_namespace_packages

with open('README.md', 'r') as readme:
    long_description = readme.read()

setup(name='pyteich',
      version='0.1.0',
      long_description=long_description,
      long_description_content_type='text/markdown',
      packages=find_namespace_packages(include=['pyteich', 'pyteich.*']),
      include_package_data=True,
      package_data={'pyteich': ['config/*.ini', 'config/*.json']},
      install_requires=['numpy', 'scipy', 'tqdm', 'jsonschema'],
      extras_require={'test': ['pytest']},
      entry_points={'console_scripts': ['pyteich=pyteich.cli:main']},
      classifiers=[
          "Programming Language :: Python",
          "Topic :: Scientific/Engineering :: Mathematics",
          "Operating System :: OS Independent"
      ],
      python_requires='>=3.7')
